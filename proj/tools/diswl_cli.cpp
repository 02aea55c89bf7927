#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diswl/counterexamples.hpp"
#include "diswl/disgnn.hpp"
#include "diswl/geometry.hpp"
#include "diswl/io.hpp"
#include "diswl/parallel.hpp"
#include "diswl/random.hpp"
#include "diswl/suites.hpp"
#include "diswl/wl_engine.hpp"

namespace fs = std::filesystem;
using namespace diswl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

/// Raised for bad argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::size_t threads = 0;
  bool timings = false;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
  } else {
    write_text_file(output, text);
  }
}

const std::vector<std::string> kMethods = {"wl1", "wl1e", "kwl", "kfwl", "kewl"};

struct RefineArgs {
  std::string method = "wl1e";
  int k = 2;
  std::optional<int> rounds;
  double tol = kDefaultTolerance;
  std::size_t max_tuples = kDefaultMaxTuples;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--method", method, "Refinement method")->check(CLI::IsMember(kMethods));
    cmd->add_option("--k", k, "Tuple order for kwl / kfwl / kewl")->check(CLI::Range(2, 6));
    cmd->add_option("--rounds", rounds, "Round budget (default: until stable)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol", tol, "Distance merge tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-tuples", max_tuples, "Refuse runs with more tuples than this");
  }

  RefinementConfig config() const {
    RefinementConfig c;
    c.method = parse_method(method);
    c.k = k;
    c.rounds = rounds;
    c.tol = tol;
    c.max_tuples = max_tuples;
    return c;
  }
};

// generate ------------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::optional<double> a, b;
  std::string variant = "red";
  std::string layers;
  std::string base = "fig2";
  std::string out;
};

CounterexamplePair build_family(const GenerateArgs& g) {
  if (auto base = parse_base(g.family)) return base_pair(*base);
  if (g.family == "cubeocta") {
    const auto v = g.variant == "red" ? CubeOctaVariant::red : CubeOctaVariant::blue;
    return cube_octahedron_pair(g.a.value_or(1.0), g.b.value_or(1.5), v);
  }
  if (g.family == "twocubes") return two_cubes_pair(g.a.value_or(1.0), g.b.value_or(g.a.value_or(1.0)));
  if (g.family == "aug") {
    const auto base = parse_base(g.base);
    if (!base) throw UsageError("unknown base '" + g.base + "'");
    if (g.layers.empty()) throw UsageError("--family aug needs --layers");
    return augment_pair(base_pair(*base), parse_layers(g.layers));
  }
  throw UsageError("unknown family '" + g.family + "'");
}

int run_generate(const GenerateArgs& g) {
  const auto pair = build_family(g);
  write_pair_dir(g.out, pair);
  std::cout << "wrote " << (fs::path(g.out) / "left.xyz").string() << ", right.xyz, params.json ("
            << pair.left.size() << " + " << pair.right.size() << " nodes)\n";
  return kExitOk;
}

// distinguish / congruent / refine ------------------------------------------

int run_distinguish(const std::string& left_path, const std::string& right_path, const RefineArgs& args,
                    const std::string& format, const std::string& output, const Global& global) {
  const auto left = read_xyz_file(left_path);
  const auto right = read_xyz_file(right_path);
  const auto started = Clock::now();
  const auto v = distinguish(left, right, args.config());
  const double ms = elapsed_ms(started);
  if (format == "text") {
    std::string text = std::string(v.distinguished ? "distinguished" : "indistinguishable");
    if (v.separation_round) text += " at round " + std::to_string(*v.separation_round);
    text += " (" + std::string(to_string(v.method));
    if (is_tuple_method(v.method)) text += " k=" + std::to_string(v.k);
    text += ", " + std::to_string(v.rounds_computed) + " rounds computed)\n";
    emit(text, output);
    return kExitOk;
  }
  Json j = to_json(v);
  j["schema_version"] = kSchemaVersion;
  j["n_left"] = left.size();
  j["n_right"] = right.size();
  j["tau"] = report_real(args.tol);
  if (global.timings) j["timings_ms"] = {{"total", report_real(ms)}};
  emit(dump(j), output);
  return kExitOk;
}

int run_congruent(const std::string& left_path, const std::string& right_path, double tol, const std::string& format,
                  const std::string& output) {
  const auto left = read_xyz_file(left_path);
  const auto right = read_xyz_file(right_path);
  const auto v = congruent_bruteforce(left, right, tol);
  if (format == "text") {
    emit(std::string(v.congruent ? "congruent" : "not congruent") + "\n", output);
    return kExitOk;
  }
  Json j = to_json(v);
  j["schema_version"] = kSchemaVersion;
  j["tau"] = report_real(tol);
  emit(dump(j), output);
  return kExitOk;
}

int run_refine(const std::string& input, const RefineArgs& args, const std::string& format, const std::string& output,
               const Global& global) {
  const auto pc = read_xyz_file(input);
  const auto config = args.config();
  const auto graphs = make_graphs(std::span<const PointCloud>(&pc, 1), config.tol);
  const auto r = refine(graphs.front(), config);
  if (format == "text") {
    std::string text = "classes per round:";
    for (auto c : r.per_round_class_counts) text += " " + std::to_string(c);
    text += "\nnode kinds:";
    for (auto s : class_sizes(r.node_colors)) text += " " + std::to_string(s);
    text += "\n";
    emit(text, output);
    return kExitOk;
  }
  Json j = to_json(r);
  j["schema_version"] = kSchemaVersion;
  j["tau"] = report_real(config.tol);
  if (global.timings) {
    Json rounds = Json::array();
    for (auto ms : r.round_ms) rounds.push_back(report_real(ms));
    j["timings_ms"] = {{"rounds", rounds}};
  }
  emit(dump(j), output);
  return kExitOk;
}

// verify-family -------------------------------------------------------------

int run_verify_family(const std::string& family, std::size_t samples, std::uint64_t seed, double tol,
                      const std::string& format, const std::string& output, const Global& global) {
  const auto started = Clock::now();
  const auto pairs = sample_family(family, samples, seed);
  Json results = Json::array();
  std::size_t failures = 0;
  std::string text;
  for (const auto& pair : pairs) {
    const auto report = verify_counterexample(pair, tol);
    if (!report.pass) ++failures;
    results.push_back(verification_json(pair, report, tol));
    std::string line = report.pass ? "PASS " : "FAIL ";
    line += pair.family;
    for (const auto& [key, value] : pair.params) line += " " + key + "=" + value;
    for (const auto& reason : report.reasons) line += "; " + reason;
    text += line + "\n";
  }
  if (format == "text") {
    text += std::to_string(pairs.size() - failures) + "/" + std::to_string(pairs.size()) + " pairs pass\n";
    emit(text, output);
  } else {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = family;
    j["samples"] = samples;
    j["seed"] = seed;
    j["results"] = std::move(results);
    j["failures"] = failures;
    j["pass"] = failures == 0;
    if (global.timings) j["timings_ms"] = {{"total", report_real(elapsed_ms(started))}};
    emit(dump(j), output);
  }
  return failures == 0 ? kExitOk : kExitFailed;
}

// forward -------------------------------------------------------------------

int run_forward(const std::string& input, ModelConfig config, const std::string& variant,
                const std::string& activation, const std::string& format, const std::string& output) {
  config.variant = parse_variant(variant);
  config.activation = parse_activation(activation);
  config.validate();
  const auto pc = read_xyz_file(input);
  const auto out = forward(pc, config);
  if (format == "text") {
    char buf[160];
    std::snprintf(buf, sizeof buf, "scalar %.12g\nequivariant %.12g %.12g %.12g\n", out.scalar, out.equivariant.x(),
                  out.equivariant.y(), out.equivariant.z());
    emit(buf, output);
    return kExitOk;
  }
  Json j = to_json(out, config);
  j["schema_version"] = kSchemaVersion;
  emit(dump(j), output);
  return kExitOk;
}

// corpus --------------------------------------------------------------------

int write_corpus(const std::string& dir, const CorpusOptions& options) {
  const auto corpus = standard_corpus(options);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[16];
    std::snprintf(name, sizeof name, "%04zu", i);
    write_pair_dir(fs::path(dir) / name, corpus[i].pair, corpus[i].name);
  }
  std::cout << "wrote " << corpus.size() << " pairs to " << dir << "\n";
  return kExitOk;
}

int run_corpus(const std::string& dir, const std::string& suite, std::size_t images, std::uint64_t seed,
               const std::string& format, const std::string& output) {
  const auto pairs = read_corpus_dir(dir);
  if (pairs.empty()) throw UsageError("no pairs found in " + dir);
  SuiteReport report;
  if (suite == "soundness") {
    report = soundness_suite(pairs, images, seed);
  } else if (suite == "hierarchy") {
    report = hierarchy_suite(pairs);
  } else {
    const auto budgets = completeness_budgets();
    report = completeness_suite(pairs, budgets);
    report.suite = "separation";
  }
  if (format == "text") {
    std::string text;
    for (const auto& c : report.cases) {
      if (!c.pass && !c.skipped) text += "FAIL " + c.name + ": " + c.detail + "\n";
    }
    text += report.suite + ": " + std::to_string(report.cases.size()) + " cases, " +
            std::to_string(report.failures()) + " failures, " + std::to_string(report.skipped()) + " skipped\n";
    emit(text, output);
  } else {
    emit(dump(to_json(report)), output);
  }
  return report.pass() ? kExitOk : kExitFailed;
}

// bench ---------------------------------------------------------------------

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const auto n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--n-range expects LO:HI, got '" + text + "'");
  }
}

PointCloud random_generic_cloud(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec3> coords;
  for (std::size_t i = 0; i < n; ++i) coords.emplace_back(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
  return build_point_cloud(std::move(coords));
}

int run_bench(RefineArgs args, const std::string& range, std::size_t step, std::uint64_t seed,
              const std::string& format, const std::string& output) {
  const auto [lo, hi] = parse_range(range);
  if (lo < 2 || hi < lo) throw UsageError("--n-range needs 2 <= LO <= HI");
  if (!args.rounds) args.rounds = 3;
  auto config = args.config();
  config.stop_when_stable = false;
  Json rows = Json::array();
  std::string text = "     n  round        ms  classes\n";
  for (std::size_t n = lo; n <= hi; n += std::max<std::size_t>(step, 1)) {
    const auto pc = random_generic_cloud(n, mix_seed(seed, n));
    const auto graphs = make_graphs(std::span<const PointCloud>(&pc, 1), config.tol);
    const auto r = refine(graphs.front(), config);
    for (std::size_t t = 0; t < r.round_ms.size(); ++t) {
      const auto classes = r.per_round_class_counts[t + 1];
      rows.push_back({{"n", n}, {"round", t + 1}, {"ms", report_real(r.round_ms[t])}, {"classes", classes}});
      char buf[96];
      std::snprintf(buf, sizeof buf, "%6zu  %5zu  %8.2f  %7zu\n", n, t + 1, r.round_ms[t], classes);
      text += buf;
    }
  }
  if (format == "text") {
    emit(text, output);
  } else {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["method"] = std::string(to_string(config.method));
    j["k"] = config.order();
    j["seed"] = seed;
    j["threads"] = thread_count();
    j["rows"] = std::move(rows);
    emit(dump(j), output);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-graph WL refinement, counterexample pairs and DisGNN forward passes"};
  app.require_subcommand(1);
  app.fallthrough();

  Global global;
  app.add_option("--threads", global.threads, "Worker threads (default: DISWL_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timings", global.timings, "Add wall-clock timings to JSON reports");

  std::string format = "json";
  std::string output;
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output,-o", output, "Write the report here instead of standard output");
  };

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a counterexample pair as XYZ files");
  generate->add_option("--family", gen.family, "Pair family")->required()->check(CLI::IsMember(family_names()));
  generate->add_option("--a", gen.a, "cubeocta: cube half side; twocubes: first half side")->check(CLI::PositiveNumber);
  generate->add_option("--b", gen.b, "cubeocta: octahedron radius; twocubes: second half side")
      ->check(CLI::PositiveNumber);
  generate->add_option("--variant", gen.variant, "cubeocta variant")->check(CLI::IsMember({"red", "blue"}));
  generate->add_option("--layers", gen.layers, "aug layers, e.g. ori:1.0,all:2.0");
  generate->add_option("--base", gen.base, "aug base pair");
  generate->add_option("--out", gen.out, "Output directory")->required();

  std::string left, right, input;
  RefineArgs refine_args;
  auto* distinguish_cmd = app.add_subcommand("distinguish", "Run a WL test jointly on two clouds");
  distinguish_cmd->add_option("--left", left)->required()->check(CLI::ExistingFile);
  distinguish_cmd->add_option("--right", right)->required()->check(CLI::ExistingFile);
  refine_args.add_to(distinguish_cmd);
  add_format(distinguish_cmd);

  double tol = kDefaultTolerance;
  auto* congruent_cmd = app.add_subcommand("congruent", "Exact congruence test by permutation search");
  congruent_cmd->add_option("--left", left)->required()->check(CLI::ExistingFile);
  congruent_cmd->add_option("--right", right)->required()->check(CLI::ExistingFile);
  congruent_cmd->add_option("--tol", tol, "Distance tolerance")->check(CLI::PositiveNumber);
  add_format(congruent_cmd);

  auto* refine_cmd = app.add_subcommand("refine", "Refine one cloud and summarize the partition");
  refine_cmd->add_option("--input", input)->required()->check(CLI::ExistingFile);
  refine_args.add_to(refine_cmd);
  add_format(refine_cmd);

  std::string family;
  std::size_t samples = 20;
  std::uint64_t seed = 2023;
  auto* verify_cmd = app.add_subcommand("verify-family", "Verify sampled pairs of a family; exit 1 on any failure");
  verify_cmd->add_option("--family", family)->required()->check(CLI::IsMember(family_names()));
  verify_cmd->add_option("--samples", samples, "Parameter draws");
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);
  add_format(verify_cmd);

  ModelConfig model;
  std::string variant = "f", activation = "silu";
  auto* forward_cmd = app.add_subcommand("forward", "Run a seeded DisGNN forward pass");
  forward_cmd->add_option("--input", input)->required()->check(CLI::ExistingFile);
  forward_cmd->add_option("--variant", variant)->check(CLI::IsMember({"plain", "f", "e"}));
  forward_cmd->add_option("--k", model.k)->check(CLI::Range(2, 4));
  forward_cmd->add_option("--rounds", model.rounds)->check(CLI::NonNegativeNumber);
  forward_cmd->add_option("--seed", model.seed);
  forward_cmd->add_option("--hidden-dim", model.hidden_dim)->check(CLI::PositiveNumber);
  forward_cmd->add_option("--rbf-dim", model.rbf_dim)->check(CLI::PositiveNumber);
  forward_cmd->add_option("--label-dim", model.label_embed_dim)->check(CLI::PositiveNumber);
  forward_cmd->add_option("--beta", model.beta)->check(CLI::PositiveNumber);
  forward_cmd->add_option("--activation", activation)->check(CLI::IsMember({"silu", "tanh"}));
  add_format(forward_cmd);

  std::string dir, suite;
  bool write = false;
  std::size_t images = 2;
  CorpusOptions corpus_options;
  auto* corpus_cmd = app.add_subcommand("corpus", "Write the standard corpus or run a suite over a corpus directory");
  corpus_cmd->add_option("--dir", dir)->required();
  corpus_cmd->add_option("--suite", suite)->check(CLI::IsMember({"soundness", "hierarchy", "separation"}));
  corpus_cmd->add_flag("--write", write, "Write the standard corpus into --dir");
  corpus_cmd->add_option("--samples", corpus_options.param_samples, "--write: parametric draws per family");
  corpus_cmd->add_option("--specs", corpus_options.aug_specs, "--write: layer specs");
  corpus_cmd->add_option("--seed", seed);
  corpus_cmd->add_option("--images", images, "soundness: E(3) images per cloud");
  add_format(corpus_cmd);

  std::string range = "8:24";
  std::size_t step = 4;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Wall time per round on random clouds");
  refine_args.add_to(bench_cmd);
  bench_cmd->add_option("--n-range", range, "LO:HI");
  bench_cmd->add_option("--step", step)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed);
  add_format(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (global.threads > 0) set_thread_count(global.threads);
    if (*generate) return run_generate(gen);
    if (*distinguish_cmd) return run_distinguish(left, right, refine_args, format, output, global);
    if (*congruent_cmd) return run_congruent(left, right, tol, format, output);
    if (*refine_cmd) return run_refine(input, refine_args, format, output, global);
    if (*verify_cmd) return run_verify_family(family, samples, seed, tol, format, output, global);
    if (*forward_cmd) return run_forward(input, model, variant, activation, format, output);
    if (*corpus_cmd) {
      if (write) {
        corpus_options.seed = seed;
        return write_corpus(dir, corpus_options);
      }
      if (suite.empty()) throw UsageError("corpus needs --suite or --write");
      return run_corpus(dir, suite, images, seed, format, output);
    }
    if (*bench_cmd) return run_bench(refine_args, range, step, bench_seed, format, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
