#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "diswl/counterexamples.hpp"
#include "helpers.hpp"

using namespace diswl;
using testing_helpers::to_oracle;

namespace {

std::vector<double> sorted_pair_distances(const std::vector<Vec3>& v) {
  std::vector<double> d;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) d.push_back((v[i] - v[j]).norm());
  std::sort(d.begin(), d.end());
  return d;
}

oracle::Cloud subset_cloud(const Polyhedron& p, const std::vector<std::size_t>& idx) {
  oracle::Cloud c;
  for (auto i : idx) c.x.push_back({p.vertices[i].x(), p.vertices[i].y(), p.vertices[i].z()});
  c.label.assign(idx.size(), 0);
  return c;
}

}  // namespace

TEST(Polyhedra, VertexCountsRadiiAndEdges) {
  const std::map<PolyhedronKind, std::pair<std::size_t, std::size_t>> expect{
      {PolyhedronKind::icosahedron, {12, 30}},
      {PolyhedronKind::dodecahedron, {20, 30}},
      {PolyhedronKind::cube, {8, 12}},
      {PolyhedronKind::octahedron, {6, 12}}};
  for (const auto& [kind, counts] : expect) {
    const auto p = polyhedron(kind, 1.7);
    ASSERT_EQ(p.vertices.size(), counts.first) << to_string(kind);
    Vec3 centroid = Vec3::Zero();
    for (const auto& v : p.vertices) {
      EXPECT_NEAR(v.norm(), 1.7, 1e-12);
      centroid += v;
    }
    EXPECT_LT(centroid.norm(), 1e-12);
    const auto d = sorted_pair_distances(p.vertices);
    const double edge = d.front();
    std::size_t edges = 0;
    for (double x : d)
      if (std::abs(x - edge) < 1e-9) ++edges;
    EXPECT_EQ(edges, counts.second) << to_string(kind);
  }
}

TEST(BaseNames, RoundTrip) {
  for (auto v : kAllBases) EXPECT_EQ(parse_base(to_string(v)), v);
  EXPECT_FALSE(parse_base("dodec7"));
  EXPECT_THROW(dodecahedron_pair(BaseVariant::fig2), std::invalid_argument);
}

// Every built-in base pair, checked with the naive oracle only.
class BaseOracle : public ::testing::TestWithParam<BaseVariant> {};

TEST_P(BaseOracle, EquivalentNonCongruentWithExpectedKinds) {
  const auto p = base_pair(GetParam());
  const auto a = to_oracle(p.left);
  const auto b = to_oracle(p.right);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_TRUE(oracle::wl1e_equivalent(a, b));
  EXPECT_NE(oracle::triangle_multiset(a), oracle::triangle_multiset(b));
  ASSERT_TRUE(p.expected_kinds);
  oracle::Wl1e wl;
  const auto ka = oracle::kinds(wl.run(a, a.size()));
  const auto kb = oracle::kinds(wl.run(b, b.size()));
  EXPECT_EQ(ka.size(), p.expected_kinds->count);
  EXPECT_EQ(kb.size(), p.expected_kinds->count);
  if (p.expected_kinds->sizes) {
    EXPECT_EQ(ka, *p.expected_kinds->sizes);
    EXPECT_EQ(kb, *p.expected_kinds->sizes);
  }
}

TEST_P(BaseOracle, LibraryVerifierAgrees) {
  const auto report = verify_counterexample(base_pair(GetParam()));
  EXPECT_TRUE(report.pass);
  EXPECT_FALSE(report.oracle.congruent);
  EXPECT_FALSE(report.wl.distinguished);
  EXPECT_TRUE(report.reasons.empty());
}

namespace diswl {
void PrintTo(BaseVariant v, std::ostream* os) { *os << to_string(v); }
}  // namespace diswl

INSTANTIATE_TEST_SUITE_P(AllBases, BaseOracle, ::testing::ValuesIn(kAllBases),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(BaseOracle, SubsetsAreDistinct) {
  for (auto v : kAllBases) {
    const auto s = base_subsets(v);
    EXPECT_EQ(s.left.size(), s.right.size());
    EXPECT_NE(s.left, s.right);
    EXPECT_EQ(std::set<std::size_t>(s.left.begin(), s.left.end()).size(), s.left.size());
  }
}

TEST(BaseOracle, ComplementPairsAreComplements) {
  const auto s6 = base_subsets(BaseVariant::dodec6);
  const auto s14 = base_subsets(BaseVariant::dodec14);
  std::set<std::size_t> all;
  for (auto i : s6.left) all.insert(i);
  for (auto i : s14.left) all.insert(i);
  EXPECT_EQ(all.size(), 20u);
}

// Re-derives the base constants: among all vertex subsets of the stated size,
// the oracle finds 1-WL-E classes holding non-congruent subsets, and each
// built-in pair lies in one such class.
TEST(SubsetSearch, Figure2PairFoundAmongIcosahedronSixSubsets) {
  const auto ico = polyhedron(PolyhedronKind::icosahedron, 1.0);
  oracle::Wl1e wl;
  std::map<std::vector<int>, std::vector<std::vector<std::size_t>>> classes;
  for (const auto& s : oracle::subsets(12, 6)) classes[oracle::sorted(wl.run(subset_cloud(ico, s), 6))].push_back(s);
  const auto base = base_subsets(BaseVariant::fig2);
  const auto key = oracle::sorted(wl.run(subset_cloud(ico, base.left), 6));
  const auto& members = classes.at(key);
  EXPECT_NE(std::find(members.begin(), members.end(), base.right), members.end());
  std::set<std::vector<std::array<long long, 3>>> shapes;
  for (const auto& m : members) shapes.insert(oracle::triangle_multiset(subset_cloud(ico, m)));
  EXPECT_GE(shapes.size(), 2u);
}

TEST(SubsetSearch, IcosahedronHasOneCounterexampleClass) {
  const auto ico = polyhedron(PolyhedronKind::icosahedron, 1.0);
  oracle::Wl1e wl;
  std::size_t ambiguous = 0;
  for (std::size_t m = 3; m <= 9; ++m) {
    std::map<std::vector<int>, std::set<std::vector<std::array<long long, 3>>>> classes;
    for (const auto& s : oracle::subsets(12, m)) {
      const auto c = subset_cloud(ico, s);
      classes[oracle::sorted(wl.run(c, m))].insert(oracle::triangle_multiset(c));
    }
    for (const auto& [key, shapes] : classes) {
      if (shapes.size() > 1) {
        ++ambiguous;
        EXPECT_EQ(m, 6u);
      }
    }
  }
  EXPECT_EQ(ambiguous, 1u);
}

TEST(SubsetSearch, DodecahedronSixPairFoundAmongSubsets) {
  const auto dod = polyhedron(PolyhedronKind::dodecahedron, 1.0);
  for (auto v : {BaseVariant::dodec6}) {
    const auto base = base_subsets(v);
    const auto m = base.left.size();
    oracle::Wl1e wl;
    const auto key = oracle::sorted(wl.run(subset_cloud(dod, base.left), m));
    std::vector<std::vector<std::size_t>> members;
    for (const auto& s : oracle::subsets(20, m)) {
      if (oracle::sorted(wl.run(subset_cloud(dod, s), m)) == key) members.push_back(s);
    }
    EXPECT_NE(std::find(members.begin(), members.end(), base.right), members.end()) << to_string(v);
    std::set<std::vector<std::array<long long, 3>>> shapes;
    for (const auto& s : members) shapes.insert(oracle::triangle_multiset(subset_cloud(dod, s)));
    EXPECT_GE(shapes.size(), 2u) << to_string(v);
  }
}

TEST(Figure2, TrianglesOnOneSideOnly) {
  const auto p = figure2_pair();
  const auto ico = polyhedron(PolyhedronKind::icosahedron, 1.0);
  const double edge = sorted_pair_distances(ico.vertices).front();
  const auto l = oracle::equilateral_count(to_oracle(p.left), edge, 1e-9);
  const auto r = oracle::equilateral_count(to_oracle(p.right), edge, 1e-9);
  EXPECT_EQ(l + r, 2u);
  EXPECT_EQ(l * r, 0u);
}

TEST(CubeOctahedron, KindsFollowVariant) {
  for (double a : {0.6, 1.0, 1.9}) {
    for (double b : {0.7, 1.3}) {
      const auto red = cube_octahedron_pair(a, b, CubeOctaVariant::red);
      const auto blue = cube_octahedron_pair(a, b, CubeOctaVariant::blue);
      EXPECT_EQ(red.left.size(), 6u);
      EXPECT_EQ(blue.left.size(), 8u);
      for (const auto* p : {&red, &blue}) {
        const auto ra = to_oracle(p->left), rb = to_oracle(p->right);
        EXPECT_TRUE(oracle::wl1e_equivalent(ra, rb));
        EXPECT_NE(oracle::triangle_multiset(ra), oracle::triangle_multiset(rb));
        EXPECT_TRUE(verify_counterexample(*p).pass);
      }
      oracle::Wl1e wl;
      EXPECT_EQ(oracle::kinds(wl.run(to_oracle(red.left), 6)).size(), 2u);
      EXPECT_EQ(oracle::kinds(wl.run(to_oracle(blue.left), 8)), (std::vector<std::size_t>{4, 4}));
    }
  }
  EXPECT_THROW(cube_octahedron_pair(0.0, 1.0, CubeOctaVariant::red), std::invalid_argument);
}

TEST(TwoCubes, EqualAndUnequalSizes) {
  const auto eq = two_cubes_pair(1.2, 1.2);
  const auto ne = two_cubes_pair(1.2, 0.8);
  oracle::Wl1e wl;
  EXPECT_EQ(oracle::kinds(wl.run(to_oracle(eq.left), 8)), (std::vector<std::size_t>{8}));
  EXPECT_EQ(oracle::kinds(wl.run(to_oracle(ne.left), 8)), (std::vector<std::size_t>{4, 4}));
  for (const auto* p : {&eq, &ne}) {
    EXPECT_TRUE(oracle::wl1e_equivalent(to_oracle(p->left), to_oracle(p->right)));
    EXPECT_TRUE(verify_counterexample(*p).pass);
  }
  EXPECT_THROW(two_cubes_pair(-1.0, 1.0), std::invalid_argument);
}

TEST(Layers, ParseAndFormat) {
  const auto spec = parse_layers("ori:1.0,all:2.5,com:3");
  ASSERT_EQ(spec.size(), 3u);
  EXPECT_EQ(spec[1].type, LayerType::all);
  EXPECT_DOUBLE_EQ(spec[1].radius, 2.5);
  EXPECT_EQ(parse_layers(format_layers(spec)).size(), 3u);
  EXPECT_THROW(parse_layers("ori"), std::invalid_argument);
  EXPECT_THROW(parse_layers("side:1.0"), std::invalid_argument);
  EXPECT_THROW(parse_layers("ori:x"), std::invalid_argument);
}

TEST(Augment, BuildsLayersAndRejectsBadSpecs) {
  const auto base = base_pair(BaseVariant::dodec6);
  const auto p = augment_pair(base, parse_layers("ori:1.0,com:2.0,all:3.0"));
  EXPECT_EQ(p.left.size(), 6u + 14u + 20u);
  EXPECT_EQ(p.family, "aug");
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(p.left[i].norm(), 1.0, 1e-12);
  for (std::size_t i = 20; i < 40; ++i) EXPECT_NEAR(p.left[i].norm(), 3.0, 1e-12);
  EXPECT_THROW(augment_pair(base, parse_layers("all:1.0,all:2.0")), std::invalid_argument);
  EXPECT_THROW(augment_pair(base, parse_layers("ori:1.0,com:1.0")), std::invalid_argument);
  EXPECT_THROW(augment_pair(base, parse_layers("ori:-1.0")), std::invalid_argument);
  EXPECT_THROW(augment_pair(cube_octahedron_pair(1, 1, CubeOctaVariant::red), parse_layers("ori:1")),
               std::invalid_argument);
}

TEST(Augment, OracleAgreesOnAugmentedPairs) {
  for (auto v : {BaseVariant::fig2, BaseVariant::dodec8}) {
    const auto p = augment_pair(base_pair(v), parse_layers("ori:1.0,com:1.7"));
    EXPECT_TRUE(oracle::wl1e_equivalent(to_oracle(p.left), to_oracle(p.right)));
    EXPECT_NE(oracle::triangle_multiset(to_oracle(p.left)), oracle::triangle_multiset(to_oracle(p.right)));
  }
}

TEST(StableState, ComplementaryLabelsAreStableOnFullPolyhedron) {
  for (auto v : kAllBases) {
    const auto base = base_pair(v);
    const auto labels = complementary_labels(base);
    const auto all = all_layer_pair(base);
    EXPECT_TRUE(verify_stable_state(all, labels.left_all(), labels.right_all())) << to_string(v);
  }
}

TEST(StableState, RejectsUnstableLabels) {
  // Singling out one vertex of the full dodecahedron is not stable.
  const auto base = base_pair(BaseVariant::dodec6);
  const auto all = all_layer_pair(base);
  LabelState l(all.left.size(), 0), r(all.right.size(), 0);
  l[0] = 1;
  r[0] = 1;
  EXPECT_FALSE(verify_stable_state(all, l, r));
}

TEST(Sampling, DeterministicAndWellFormed) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto spec = sample_layer_spec(s);
    EXPECT_GE(spec.size(), 1u);
    EXPECT_LE(spec.size(), 4u);
    bool non_all = false;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      non_all = non_all || spec[i].type != LayerType::all;
      EXPECT_GE(spec[i].radius, 0.5);
      EXPECT_LE(spec[i].radius, 3.0);
      for (std::size_t j = 0; j < i; ++j) EXPECT_GE(std::abs(spec[i].radius - spec[j].radius), 0.05);
    }
    EXPECT_TRUE(non_all);
    EXPECT_EQ(format_layers(spec), format_layers(sample_layer_spec(s)));
  }
  EXPECT_EQ(sample_family("cubeocta", 5, 1).size(), 10u);
  EXPECT_EQ(sample_family("twocubes", 5, 1).size(), 5u);
  EXPECT_EQ(sample_family("dodec8", 5, 1).size(), 1u);
  EXPECT_THROW(sample_family("tetra", 1, 1), std::invalid_argument);
}

TEST(Verification, ReportsCongruentPairs) {
  auto p = base_pair(BaseVariant::fig2);
  p.right = p.left;
  const auto r = verify_counterexample(p);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.oracle.congruent);
  EXPECT_NE(std::find(r.reasons.begin(), r.reasons.end(), "congruent"), r.reasons.end());
}

TEST(Verification, ReportsWrongExpectedKinds) {
  auto p = base_pair(BaseVariant::dodec8);
  p.expected_kinds = ExpectedKinds{3, std::nullopt};
  const auto r = verify_counterexample(p);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.kinds_match);
}
