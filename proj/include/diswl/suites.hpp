#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diswl/counterexamples.hpp"
#include "diswl/disgnn.hpp"
#include "diswl/wl_engine.hpp"

namespace diswl {

struct NamedPair {
  std::string name;
  CounterexamplePair pair;
};

struct CorpusOptions {
  std::size_t param_samples = 20;  ///< (a, b) draws per parametric family
  std::size_t aug_specs = 20;      ///< layer specs, each applied to every base
  std::uint64_t seed = 2023;
};

/// Bases, cube+octahedron (red and blue per draw), two cubes, and every
/// sampled layer spec over every base.
std::vector<NamedPair> standard_corpus(const CorpusOptions& options = {});

struct SuiteCase {
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCase> cases;

  std::size_t failures() const;
  std::size_t skipped() const;
  bool pass() const { return failures() == 0; }
};

/// A discrete refinement budget.
struct Budget {
  Method method = Method::kfwl;
  int k = 2;
  std::optional<int> rounds;

  std::string label() const;
  RefinementConfig config(double tol = kDefaultTolerance) const;
};

/// The round / order budgets that are expected to separate every pair.
std::vector<Budget> completeness_budgets();

/// Largest n for which a budget of the given order is attempted.
std::size_t node_limit(int k);

/// Each budget must distinguish each pair; pairs above node_limit(k) are
/// reported as skipped.
SuiteReport completeness_suite(std::span<const NamedPair> corpus, std::span<const Budget> budgets);

/// Random clouds against seeded E(3) + permutation images of themselves;
/// no method may report "distinguished".
SuiteReport soundness_suite(std::size_t trials, std::uint64_t seed);

/// Both sides of every pair against `images` seeded E(3) + permutation
/// images each. Order-3 runs are skipped above node_limit(4).
SuiteReport soundness_suite(std::span<const NamedPair> pairs, std::size_t images, std::uint64_t seed);

/// Equal-size random vertex subsets of the icosahedron and dodecahedron.
std::vector<NamedPair> random_subset_pairs(std::size_t count, std::uint64_t seed);

/// Checks that no weaker test separates a pair a stronger one does not:
/// 1-WL-E => 2-FWL, 2-FWL(r) => 2-E-WL(r) for r = 1..3, 2-FWL(1) => 3-FWL(1).
SuiteReport hierarchy_suite(std::span<const NamedPair> pairs);

struct ConsistencyOptions {
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  int max_rounds = 3;
  double agree_tol = 1e-6;
  double separate_tol = 1e-6;
  std::size_t min_separating_seeds = 4;
};

/// Continuous model against the discrete engine on k = 2: where the matching
/// discrete budget does not separate a pair, the scalars must agree; where
/// 2-FWL(3) separates it, the f model with T = 3 must separate the scalars
/// for enough seeds.
SuiteReport consistency_suite(std::span<const NamedPair> corpus, const ConsistencyOptions& options = {});

/// The discrete method matching a model variant.
Method matching_method(Variant v);

}  // namespace diswl
