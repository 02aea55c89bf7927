#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "diswl/counterexamples.hpp"
#include "diswl/disgnn.hpp"
#include "diswl/geometry.hpp"
#include "diswl/suites.hpp"
#include "diswl/wl_engine.hpp"

namespace diswl {

/// Malformed XYZ input; the message starts with "line N:".
class XyzError : public std::runtime_error {
 public:
  XyzError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// Count line, comment line, then one "label x y z" record per node.
PointCloud parse_xyz(std::string_view text);
/// Coordinates at 17 significant digits, so parse_xyz(write_xyz(pc)) == pc.
std::string write_xyz(const PointCloud& pc, std::string_view comment = "");

PointCloud read_xyz_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Rounds to 12 significant digits for reports; non-finite values become null.
Json report_real(double x);

Json to_json(const CongruenceVerdict& v);
Json to_json(const Verdict& v);
Json to_json(const ExpectedKinds& e);
Json to_json(const RefinementResult& r);
Json to_json(const ModelOutput& out, const ModelConfig& config);

/// {"4": 2, "2": 1}: number of classes of each size.
Json kind_histogram(const std::vector<std::size_t>& kinds);

/// Family, params and expected kinds of a pair.
Json pair_json(const CounterexamplePair& pair);

/// Full verification report; "pass" equals report.pass.
Json verification_json(const CounterexamplePair& pair, const VerificationReport& report, double tol);

/// left.xyz, right.xyz and params.json (pair_json plus "name" when given).
void write_pair_dir(const std::filesystem::path& dir, const CounterexamplePair& pair, std::string_view name = "");
/// Inverse of write_pair_dir; subsets are not restored. The name falls back
/// to the directory name.
NamedPair read_pair_dir(const std::filesystem::path& dir);
/// Every immediate subdirectory holding a left.xyz, in name order.
std::vector<NamedPair> read_corpus_dir(const std::filesystem::path& dir);

Json to_json(const SuiteReport& report);

/// Two-space indented, keys sorted, trailing newline.
std::string dump(const Json& j);

}  // namespace diswl
