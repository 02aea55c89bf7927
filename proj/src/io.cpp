#include "diswl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace diswl {

XyzError::XyzError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    auto end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

bool blank(std::string_view line) { return fields(line).empty(); }

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string format_general(double x, int digits) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, ptr);
}

}  // namespace

PointCloud parse_xyz(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || blank(lines[0])) throw XyzError(1, "missing atom count");
  const auto count_fields = fields(lines[0]);
  long long count = 0;
  if (count_fields.size() != 1 || !parse_number(count_fields[0], count)) {
    throw XyzError(1, "atom count '" + std::string(lines[0]) + "' is not an integer");
  }
  if (count < 1) throw XyzError(1, "atom count must be positive");
  if (lines.size() < 2) throw XyzError(2, "missing comment line");

  const auto n = static_cast<std::size_t>(count);
  std::vector<Vec3> coords;
  std::vector<std::int64_t> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line_no = i + 3;
    if (line_no > lines.size()) {
      throw XyzError(line_no, "expected " + std::to_string(n) + " records, found " + std::to_string(i));
    }
    const auto f = fields(lines[line_no - 1]);
    if (f.size() != 4) throw XyzError(line_no, "expected 'label x y z'");
    std::int64_t label = 0;
    if (!parse_number(f[0], label)) throw XyzError(line_no, "label '" + std::string(f[0]) + "' is not an integer");
    if (label < 0) throw XyzError(line_no, "label must be non-negative");
    Vec3 x;
    for (int c = 0; c < 3; ++c) {
      double v = 0.0;
      if (!parse_number(f[static_cast<std::size_t>(c) + 1], v) || !std::isfinite(v)) {
        throw XyzError(line_no, "coordinate '" + std::string(f[static_cast<std::size_t>(c) + 1]) + "' is not a finite number");
      }
      x[c] = v;
    }
    coords.push_back(x);
    labels.push_back(label);
  }
  for (std::size_t l = n + 2; l < lines.size(); ++l) {
    if (!blank(lines[l])) throw XyzError(l + 1, "more records than the atom count " + std::to_string(n));
  }
  return PointCloud(std::move(coords), std::move(labels));
}

std::string write_xyz(const PointCloud& pc, std::string_view comment) {
  if (comment.find('\n') != std::string_view::npos) throw std::invalid_argument("comment must be a single line");
  std::string out = std::to_string(pc.size()) + "\n" + std::string(comment) + "\n";
  for (std::size_t i = 0; i < pc.size(); ++i) {
    out += std::to_string(pc.labels()[i]);
    for (int c = 0; c < 3; ++c) out += " " + format_general(pc[i][c], 17);
    out += "\n";
  }
  return out;
}

PointCloud read_xyz_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_xyz(ss.str());
  } catch (const XyzError& e) {
    throw XyzError(e.line(), e.detail() + " (" + path.string() + ")");
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

Json report_real(double x) {
  if (!std::isfinite(x)) return nullptr;
  const auto s = format_general(x, 12);
  double rounded = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), rounded);
  return rounded;
}

Json to_json(const CongruenceVerdict& v) {
  Json j;
  j["congruent"] = v.congruent;
  j["max_residual"] = report_real(v.max_residual);
  j["witness_permutation"] = v.witness_permutation ? Json(*v.witness_permutation) : Json(nullptr);
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["distinguished"] = v.distinguished;
  j["separation_round"] = v.separation_round ? Json(*v.separation_round) : Json(nullptr);
  j["method"] = std::string(to_string(v.method));
  j["k"] = v.k;
  j["rounds"] = v.rounds ? Json(*v.rounds) : Json(nullptr);
  j["rounds_computed"] = v.rounds_computed;
  return j;
}

Json to_json(const ExpectedKinds& e) {
  Json j;
  j["count"] = e.count;
  j["sizes"] = e.sizes ? Json(*e.sizes) : Json(nullptr);
  return j;
}

Json kind_histogram(const std::vector<std::size_t>& kinds) {
  std::map<std::size_t, std::size_t> counts;
  for (auto k : kinds) ++counts[k];
  Json j = Json::object();
  for (const auto& [size, count] : counts) j[std::to_string(size)] = count;
  return j;
}

Json to_json(const RefinementResult& r) {
  Json j;
  j["method"] = std::string(to_string(r.method));
  j["k"] = r.k;
  j["n"] = r.n;
  j["rounds_computed"] = r.final.round;
  j["stable_round"] = r.stable_round ? Json(*r.stable_round) : Json(nullptr);
  j["per_round_class_counts"] = r.per_round_class_counts;
  std::map<Color, std::size_t> dense;
  std::vector<std::size_t> partition;
  for (auto c : r.node_colors) partition.push_back(dense.try_emplace(c, dense.size()).first->second);
  j["node_partition"] = partition;
  const auto kinds = class_sizes(r.node_colors);
  j["kinds"] = kinds;
  j["kind_histogram"] = kind_histogram(kinds);
  return j;
}

Json to_json(const ModelOutput& out, const ModelConfig& config) {
  Json j;
  j["variant"] = std::string(to_string(config.variant));
  j["k"] = config.k;
  j["rounds"] = config.rounds;
  j["seed"] = config.seed;
  j["hidden_dim"] = config.hidden_dim;
  j["rbf_dim"] = config.rbf_dim;
  j["label_embed_dim"] = config.label_embed_dim;
  j["activation"] = std::string(to_string(config.activation));
  j["n"] = out.node_reps.cols();
  j["scalar"] = report_real(out.scalar);
  j["equivariant"] = {report_real(out.equivariant.x()), report_real(out.equivariant.y()),
                      report_real(out.equivariant.z())};
  return j;
}

Json pair_json(const CounterexamplePair& pair) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["family"] = pair.family;
  j["params"] = pair.params;
  j["n_left"] = pair.left.size();
  j["n_right"] = pair.right.size();
  j["expected_kinds"] = pair.expected_kinds ? to_json(*pair.expected_kinds) : Json(nullptr);
  return j;
}

Json verification_json(const CounterexamplePair& pair, const VerificationReport& report, double tol) {
  Json j = pair_json(pair);
  j["method"] = std::string(to_string(report.wl.method));
  j["k"] = report.wl.k;
  j["rounds"] = report.wl.rounds ? Json(*report.wl.rounds) : Json(nullptr);
  j["tau"] = report_real(tol);
  j["verdicts"] = {{"oracle", to_json(report.oracle)}, {"wl", to_json(report.wl)}};
  j["separation_round"] = report.wl.separation_round ? Json(*report.wl.separation_round) : Json(nullptr);
  j["kinds"] = {{"left", report.kinds_left}, {"right", report.kinds_right}};
  j["kind_histogram"] = {{"left", kind_histogram(report.kinds_left)}, {"right", kind_histogram(report.kinds_right)}};
  j["kinds_match"] = report.kinds_match;
  j["reasons"] = report.reasons;
  j["pass"] = report.pass;
  return j;
}

void write_pair_dir(const std::filesystem::path& dir, const CounterexamplePair& pair, std::string_view name) {
  std::filesystem::create_directories(dir);
  const std::string comment = pair.family + (name.empty() ? "" : " " + std::string(name));
  write_text_file(dir / "left.xyz", write_xyz(pair.left, comment + " left"));
  write_text_file(dir / "right.xyz", write_xyz(pair.right, comment + " right"));
  Json j = pair_json(pair);
  if (!name.empty()) j["name"] = std::string(name);
  write_text_file(dir / "params.json", dump(j));
}

NamedPair read_pair_dir(const std::filesystem::path& dir) {
  NamedPair out;
  out.pair.left = read_xyz_file(dir / "left.xyz");
  out.pair.right = read_xyz_file(dir / "right.xyz");
  out.name = dir.filename().string();
  const auto params_path = dir / "params.json";
  if (!std::filesystem::exists(params_path)) return out;
  std::ifstream in(params_path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::runtime_error(params_path.string() + ": " + e.what());
  }
  out.pair.family = j.value("family", "");
  if (j.contains("params")) out.pair.params = j["params"].get<std::map<std::string, std::string>>();
  if (j.contains("name")) out.name = j["name"].get<std::string>();
  if (j.contains("expected_kinds") && !j["expected_kinds"].is_null()) {
    const auto& e = j["expected_kinds"];
    ExpectedKinds kinds;
    kinds.count = e.at("count").get<std::size_t>();
    if (e.contains("sizes") && !e["sizes"].is_null()) kinds.sizes = e["sizes"].get<std::vector<std::size_t>>();
    out.pair.expected_kinds = kinds;
  }
  return out;
}

std::vector<NamedPair> read_corpus_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "left.xyz")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<NamedPair> out;
  for (const auto& d : dirs) out.push_back(read_pair_dir(d));
  return out;
}

Json to_json(const SuiteReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = report.suite;
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    cases.push_back({{"name", c.name}, {"pass", c.pass}, {"skipped", c.skipped}, {"detail", c.detail}});
  }
  j["cases"] = std::move(cases);
  j["failures"] = report.failures();
  j["skipped"] = report.skipped();
  j["pass"] = report.pass();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace diswl
