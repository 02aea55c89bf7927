#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "diswl/counterexamples.hpp"
#include "diswl/io.hpp"
#include "helpers.hpp"

using namespace diswl;
using testing_helpers::random_cloud;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_xyz(text);
  } catch (const XyzError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Xyz, ParsesRecord) {
  const auto pc = parse_xyz("1\ncomment\n6 1.0 2.0 3.0\n");
  ASSERT_EQ(pc.size(), 1u);
  EXPECT_EQ(pc.labels()[0], 6);
  EXPECT_EQ(pc[0], Vec3(1, 2, 3));
}

TEST(Xyz, ToleratesWhitespaceAndCrlf) {
  const auto pc = parse_xyz("  2 \r\n\r\n0\t-1e-3  +2.5 3\r\n 1 4 5 6\n\n");
  ASSERT_EQ(pc.size(), 2u);
  EXPECT_DOUBLE_EQ(pc[0].x(), -1e-3);
  EXPECT_DOUBLE_EQ(pc[0].y(), 2.5);
}

TEST(Xyz, RoundTripsGeneratedPairs) {
  for (auto v : kAllBases) {
    const auto p = base_pair(v);
    EXPECT_EQ(parse_xyz(write_xyz(p.left)), p.left);
    EXPECT_EQ(parse_xyz(write_xyz(p.right, "right side")), p.right);
  }
  const auto aug = augment_pair(base_pair(BaseVariant::dodec10a), parse_layers("ori:1.1,com:2.3,all:0.7"));
  EXPECT_EQ(parse_xyz(write_xyz(aug.left)), aug.left);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pc = random_cloud(9, s, 1e3);
    EXPECT_EQ(parse_xyz(write_xyz(pc)), pc);
  }
}

TEST(Xyz, ErrorsNameTheLine) {
  EXPECT_EQ(error_line(""), 1u);
  EXPECT_EQ(error_line("abc\nx\n"), 1u);
  EXPECT_EQ(error_line("2.5\nx\n"), 1u);
  EXPECT_EQ(error_line("0\nx\n"), 1u);
  EXPECT_EQ(error_line("1\n"), 2u);
  EXPECT_EQ(error_line("2\nc\n0 1 2 3\n"), 4u);
  EXPECT_EQ(error_line("1\nc\n0 1 2\n"), 3u);
  EXPECT_EQ(error_line("1\nc\nC 1 2 3\n"), 3u);
  EXPECT_EQ(error_line("1\nc\n0 1 two 3\n"), 3u);
  EXPECT_EQ(error_line("1\nc\n0 1 nan 3\n"), 3u);
  EXPECT_EQ(error_line("1\nc\n-1 1 2 3\n"), 3u);
  EXPECT_EQ(error_line("1\nc\n0 1 2 3\n0 1 2 3\n"), 4u);
  try {
    parse_xyz("x\n");
    FAIL();
  } catch (const XyzError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 1:", 0), 0u);
  }
}

TEST(Xyz, CommentMustBeOneLine) { EXPECT_THROW(write_xyz(random_cloud(2, 1), "a\nb"), std::invalid_argument); }

TEST(Xyz, FileErrorsMentionPath) {
  const auto dir = std::filesystem::temp_directory_path() / "diswl_io_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "bad.xyz", "1\nc\n0 1 2\n");
  try {
    read_xyz_file(dir / "bad.xyz");
    FAIL();
  } catch (const XyzError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.xyz"), std::string::npos);
  }
  EXPECT_THROW(read_xyz_file(dir / "missing.xyz"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST(Json, ReportRealRoundsTo12Digits) {
  EXPECT_EQ(report_real(0.1 + 0.2).get<double>(), 0.3);
  EXPECT_TRUE(report_real(std::nan("")).is_null());
}

TEST(Json, VerificationReportIsDeterministicAndConsistent) {
  const auto p = base_pair(BaseVariant::dodec8);
  const auto r = verify_counterexample(p);
  const auto a = dump(verification_json(p, r, kDefaultTolerance));
  const auto b = dump(verification_json(p, verify_counterexample(p), kDefaultTolerance));
  EXPECT_EQ(a, b);
  const auto j = Json::parse(a);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["family"], "dodec8");
  EXPECT_EQ(j["pass"], r.pass);
  EXPECT_EQ(j["verdicts"]["oracle"]["congruent"], false);
  EXPECT_EQ(j["verdicts"]["wl"]["distinguished"], false);
  EXPECT_EQ(j["kind_histogram"]["left"]["4"], 2);
  EXPECT_EQ(j["expected_kinds"]["count"], 2);
  // pass follows from the other fields.
  const bool derived = !j["verdicts"]["oracle"]["congruent"].get<bool>() &&
                       !j["verdicts"]["wl"]["distinguished"].get<bool>() && j["kinds_match"].get<bool>();
  EXPECT_EQ(j["pass"].get<bool>(), derived);
}

TEST(Json, KeysAreSorted) {
  const auto text = dump(pair_json(base_pair(BaseVariant::fig2)));
  EXPECT_LT(text.find("\"expected_kinds\""), text.find("\"family\""));
  EXPECT_LT(text.find("\"family\""), text.find("\"schema_version\""));
}

TEST(PairDir, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "diswl_pair_dir_test";
  std::filesystem::remove_all(dir);
  const auto p = cube_octahedron_pair(0.8, 1.4, CubeOctaVariant::blue);
  write_pair_dir(dir / "0000", p, "blue one");
  write_pair_dir(dir / "0001", base_pair(BaseVariant::fig2));
  const auto corpus = read_corpus_dir(dir);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0].name, "blue one");
  EXPECT_EQ(corpus[1].name, "0001");
  EXPECT_EQ(corpus[0].pair.left, p.left);
  EXPECT_EQ(corpus[0].pair.params, p.params);
  ASSERT_TRUE(corpus[0].pair.expected_kinds);
  EXPECT_EQ(corpus[0].pair.expected_kinds->sizes, p.expected_kinds->sizes);
  std::filesystem::remove_all(dir);
}
