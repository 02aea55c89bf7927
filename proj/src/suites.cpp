#include "diswl/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <tuple>

#include "diswl/random.hpp"

namespace diswl {

namespace {

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string name_of(const CounterexamplePair& p, std::size_t index) {
  std::string name = p.family;
  if (p.family == "aug") {
    name += "[" + p.params.at("base") + "|" + p.params.at("layers") + "]";
  } else if (!p.params.empty() && !p.subsets) {
    name += "#" + std::to_string(index);
    if (auto it = p.params.find("variant"); it != p.params.end()) name += "-" + it->second;
  }
  return name;
}

}  // namespace

std::vector<NamedPair> standard_corpus(const CorpusOptions& options) {
  std::vector<NamedPair> out;
  for (auto v : kAllBases) out.push_back({std::string(to_string(v)), base_pair(v)});
  const auto co = sample_family("cubeocta", options.param_samples, options.seed);
  for (std::size_t i = 0; i < co.size(); ++i) out.push_back({name_of(co[i], i / 2), co[i]});
  const auto tc = sample_family("twocubes", options.param_samples, options.seed);
  for (std::size_t i = 0; i < tc.size(); ++i) out.push_back({name_of(tc[i], i), tc[i]});
  for (std::size_t s = 0; s < options.aug_specs; ++s) {
    const auto spec = sample_layer_spec(mix_seed(options.seed, s));
    for (auto v : kAllBases) {
      auto pair = augment_pair(base_pair(v), spec);
      auto name = name_of(pair, s);
      out.push_back({std::move(name), std::move(pair)});
    }
  }
  return out;
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const SuiteCase& c) { return !c.pass && !c.skipped; }));
}

std::size_t SuiteReport::skipped() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const SuiteCase& c) { return c.skipped; }));
}

std::string Budget::label() const {
  std::string s = std::string(to_string(method));
  if (is_tuple_method(method)) s += "(k=" + std::to_string(k) + ")";
  s += rounds ? "@" + std::to_string(*rounds) : "@stable";
  return s;
}

RefinementConfig Budget::config(double tol) const {
  RefinementConfig c;
  c.method = method;
  c.k = k;
  c.rounds = rounds;
  c.tol = tol;
  return c;
}

std::vector<Budget> completeness_budgets() {
  return {{Method::kfwl, 2, 3}, {Method::kewl, 2, 3}, {Method::kfwl, 3, 1}, {Method::kewl, 3, 1}, {Method::kwl, 4, 1}};
}

std::size_t node_limit(int k) {
  switch (k) {
    case 1:
    case 2: return 1000;
    case 3: return 100;
    case 4: return 24;
    default: return 10;
  }
}

SuiteReport completeness_suite(std::span<const NamedPair> corpus, std::span<const Budget> budgets) {
  SuiteReport report{"completeness", {}};
  for (const auto& item : corpus) {
    for (const auto& b : budgets) {
      SuiteCase c;
      c.name = item.name + " " + b.label();
      const auto n = std::max(item.pair.left.size(), item.pair.right.size());
      if (n > node_limit(b.k)) {
        c.skipped = true;
        c.detail = "n = " + std::to_string(n) + " above the order-" + std::to_string(b.k) + " limit";
      } else {
        const auto v = distinguish(item.pair.left, item.pair.right, b.config());
        c.pass = v.distinguished;
        c.detail = v.distinguished ? "separated at round " + std::to_string(*v.separation_round) : "not separated";
      }
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

namespace {

PointCloud random_cloud(Rng& rng) {
  const auto n = static_cast<std::size_t>(4 + rng.below(7));
  std::vector<Vec3> coords;
  std::vector<std::int64_t> labels;
  const bool labelled = rng.below(3) == 0;
  if (rng.below(2) == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      coords.emplace_back(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
      labels.push_back(labelled ? static_cast<std::int64_t>(rng.below(3)) : 0);
    }
  } else {
    // Symmetric clouds exercise the tolerance on repeated distances.
    const auto kind = rng.below(2) == 0 ? PolyhedronKind::icosahedron : PolyhedronKind::dodecahedron;
    const auto poly = polyhedron(kind, rng.uniform(0.5, 2.0));
    const auto perm = random_permutation(poly.vertices.size(), rng.bits());
    for (std::size_t i = 0; i < n; ++i) {
      coords.push_back(poly.vertices[perm[i]]);
      labels.push_back(labelled ? static_cast<std::int64_t>(rng.below(3)) : 0);
    }
  }
  return PointCloud(std::move(coords), std::move(labels));
}

}  // namespace

SuiteReport soundness_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport report{"soundness", {}};
  const Budget methods[] = {{Method::wl1e, 1, std::nullopt},
                            {Method::kfwl, 2, std::nullopt},
                            {Method::kewl, 2, std::nullopt},
                            {Method::kwl, 3, std::nullopt}};
  Rng rng(mix_seed(seed, 0x50));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto cloud = random_cloud(rng);
    const auto g = random_e3(rng.bits());
    const auto perm = random_permutation(cloud.size(), rng.bits());
    const auto image = apply_e3(cloud, g).permuted(perm);
    for (const auto& m : methods) {
      SuiteCase c;
      c.name = "trial " + std::to_string(t) + " n=" + std::to_string(cloud.size()) + " " + m.label();
      const auto v = distinguish(cloud, image, m.config());
      c.pass = !v.distinguished;
      c.detail = v.distinguished ? "false separation at round " + std::to_string(*v.separation_round) : "ok";
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

SuiteReport soundness_suite(std::span<const NamedPair> pairs, std::size_t images, std::uint64_t seed) {
  SuiteReport report{"soundness", {}};
  const Budget methods[] = {{Method::wl1e, 1, std::nullopt},
                            {Method::kfwl, 2, std::nullopt},
                            {Method::kewl, 2, std::nullopt},
                            {Method::kwl, 3, std::nullopt}};
  Rng rng(mix_seed(seed, 0x51));
  for (const auto& item : pairs) {
    for (const auto* side : {&item.pair.left, &item.pair.right}) {
      const std::string side_name = side == &item.pair.left ? "left" : "right";
      for (std::size_t i = 0; i < images; ++i) {
        const auto g = random_e3(rng.bits());
        const auto perm = random_permutation(side->size(), rng.bits());
        const auto image = apply_e3(*side, g).permuted(perm);
        for (const auto& m : methods) {
          SuiteCase c;
          c.name = item.name + " " + side_name + " image " + std::to_string(i) + " " + m.label();
          if (m.k == 3 && side->size() > node_limit(4)) {
            c.skipped = true;
            c.detail = "n = " + std::to_string(side->size()) + " above the limit for this suite";
          } else {
            const auto v = distinguish(*side, image, m.config());
            c.pass = !v.distinguished;
            c.detail = v.distinguished ? "false separation at round " + std::to_string(*v.separation_round) : "ok";
          }
          report.cases.push_back(std::move(c));
        }
      }
    }
  }
  return report;
}

std::vector<NamedPair> random_subset_pairs(std::size_t count, std::uint64_t seed) {
  std::vector<NamedPair> out;
  Rng rng(mix_seed(seed, 0x5b));
  for (std::size_t i = 0; i < count; ++i) {
    const auto kind = rng.below(2) == 0 ? PolyhedronKind::icosahedron : PolyhedronKind::dodecahedron;
    const auto poly = polyhedron(kind, 1.0);
    const auto size = static_cast<std::size_t>(4 + rng.below(poly.vertices.size() - 6));
    auto pick = [&]() {
      auto perm = random_permutation(poly.vertices.size(), rng.bits());
      perm.resize(size);
      std::sort(perm.begin(), perm.end());
      std::vector<Vec3> coords;
      for (auto v : perm) coords.push_back(poly.vertices[v]);
      return build_point_cloud(std::move(coords));
    };
    CounterexamplePair p{pick(), pick(), "random-subsets", {}, std::nullopt, std::nullopt};
    p.params["polyhedron"] = std::string(to_string(kind));
    out.push_back({"random#" + std::to_string(i) + "-" + std::string(to_string(kind)) + "-" + std::to_string(size),
                   std::move(p)});
  }
  return out;
}

SuiteReport hierarchy_suite(std::span<const NamedPair> pairs) {
  SuiteReport report{"hierarchy", {}};
  auto sep = [](const NamedPair& p, Budget b) { return distinguish(p.pair.left, p.pair.right, b.config()).distinguished; };
  auto add = [&](const NamedPair& p, const std::string& claim, bool weak, bool strong) {
    SuiteCase c;
    c.name = p.name + " " + claim;
    c.pass = !weak || strong;
    c.detail = std::string(weak ? "weaker separates" : "weaker does not separate") +
               (strong ? ", stronger separates" : ", stronger does not separate");
    report.cases.push_back(std::move(c));
  };
  for (const auto& p : pairs) {
    const auto n = std::max(p.pair.left.size(), p.pair.right.size());
    const bool wl1e = sep(p, {Method::wl1e, 1, std::nullopt});
    add(p, "wl1e => kfwl(k=2)@stable", wl1e, sep(p, {Method::kfwl, 2, std::nullopt}));
    std::vector<bool> fwl2(4);
    for (int r = 1; r <= 3; ++r) {
      fwl2[static_cast<std::size_t>(r)] = sep(p, {Method::kfwl, 2, r});
      add(p, "kfwl(k=2)@" + std::to_string(r) + " => kewl(k=2)@" + std::to_string(r), fwl2[static_cast<std::size_t>(r)],
          sep(p, {Method::kewl, 2, r}));
    }
    if (n <= node_limit(3)) add(p, "kfwl(k=2)@1 => kfwl(k=3)@1", fwl2[1], sep(p, {Method::kfwl, 3, 1}));
  }
  return report;
}

Method matching_method(Variant v) {
  switch (v) {
    case Variant::plain: return Method::kwl;
    case Variant::f: return Method::kfwl;
    case Variant::e: return Method::kewl;
  }
  return Method::kfwl;
}

SuiteReport consistency_suite(std::span<const NamedPair> corpus, const ConsistencyOptions& options) {
  SuiteReport report{"consistency", {}};
  // Weights depend only on the configuration, so build each once.
  std::map<std::tuple<int, int, std::uint64_t>, WeightSet> weights;
  auto model = [&](Variant v, int rounds, std::uint64_t seed) -> const WeightSet& {
    const auto key = std::make_tuple(static_cast<int>(v), rounds, seed);
    auto it = weights.find(key);
    if (it == weights.end()) {
      ModelConfig cfg;
      cfg.variant = v;
      cfg.k = 2;
      cfg.rounds = rounds;
      cfg.seed = seed;
      it = weights.emplace(key, make_weights(cfg)).first;
    }
    return it->second;
  };

  for (const auto& item : corpus) {
    const auto& left = item.pair.left;
    const auto& right = item.pair.right;
    for (auto variant : {Variant::plain, Variant::f, Variant::e}) {
      for (int t = 0; t <= options.max_rounds; ++t) {
        const Budget b{matching_method(variant), 2, t};
        if (distinguish(left, right, b.config()).distinguished) continue;
        SuiteCase c;
        c.name = item.name + " " + std::string(to_string(variant)) + "(k=2,T=" + std::to_string(t) + ") agrees";
        double worst = 0.0;
        for (auto seed : options.seeds) {
          const auto& w = model(variant, t, seed);
          const double a = forward(left, w).scalar;
          const double bb = forward(right, w).scalar;
          const double rel = std::abs(a - bb) / (1.0 + std::max(std::abs(a), std::abs(bb)));
          worst = std::max(worst, rel);
        }
        c.pass = worst <= options.agree_tol;
        c.detail = fmt("largest relative gap %.3g", worst);
        report.cases.push_back(std::move(c));
      }
    }

    if (!distinguish(left, right, Budget{Method::kfwl, 2, 3}.config()).distinguished) continue;
    SuiteCase c;
    c.name = item.name + " f(k=2,T=3) separates";
    std::size_t separating = 0;
    std::string shortfalls;
    for (auto seed : options.seeds) {
      const auto& w = model(Variant::f, 3, seed);
      const double gap = std::abs(forward(left, w).scalar - forward(right, w).scalar);
      if (gap > options.separate_tol) {
        ++separating;
      } else {
        shortfalls += (shortfalls.empty() ? "" : ", ") + std::to_string(seed) + fmt(" (%.3g)", gap);
      }
    }
    c.pass = separating >= options.min_separating_seeds;
    c.detail = std::to_string(separating) + "/" + std::to_string(options.seeds.size()) + " seeds separate";
    if (!shortfalls.empty()) c.detail += "; shortfall seeds: " + shortfalls;
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace diswl
