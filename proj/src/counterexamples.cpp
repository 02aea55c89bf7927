#include "diswl/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "diswl/geometry.hpp"
#include "diswl/random.hpp"

namespace diswl {

namespace {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

PointCloud subset_cloud(const Polyhedron& p, const std::vector<std::size_t>& indices, double scale = 1.0) {
  std::vector<Vec3> coords;
  coords.reserve(indices.size());
  for (auto i : indices) coords.push_back(p.vertices.at(i) * scale);
  return build_point_cloud(std::move(coords));
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& subset) {
  std::vector<bool> in(n, false);
  for (auto i : subset) in.at(i) = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

std::size_t vertex_count(PolyhedronKind kind) { return polyhedron(kind, 1.0).vertices.size(); }

// Recovered by exhaustive search over vertex subsets (see the search test):
// pairs that 1-WL-E cannot separate, that are not congruent, and whose kind
// counts match. Indices refer to the vertex order documented in the header.
const std::vector<std::size_t> kFig2Left = {0, 1, 3, 6, 9, 10};
const std::vector<std::size_t> kFig2Right = {0, 1, 2, 9, 10, 11};
const std::vector<std::size_t> kDodec6Left = {0, 1, 6, 7, 8, 17};
const std::vector<std::size_t> kDodec6Right = {0, 1, 6, 7, 10, 19};
const std::vector<std::size_t> kDodec8Left = {0, 1, 6, 7, 8, 9, 17, 18};
const std::vector<std::size_t> kDodec8Right = {0, 1, 6, 7, 9, 10, 18, 19};
const std::vector<std::size_t> kDodec10aLeft = {0, 1, 2, 5, 6, 7, 8, 9, 17, 18};
const std::vector<std::size_t> kDodec10aRight = {0, 1, 2, 5, 6, 7, 8, 10, 17, 19};
const std::vector<std::size_t> kDodec10bLeft = {0, 1, 6, 7, 9, 10, 13, 16, 18, 19};
const std::vector<std::size_t> kDodec10bRight = {0, 1, 6, 7, 8, 9, 11, 14, 17, 18};

ExpectedKinds expected_for(BaseVariant v) {
  switch (v) {
    case BaseVariant::fig2: return {1, std::vector<std::size_t>{6}};
    case BaseVariant::dodec6: return {2, std::nullopt};
    case BaseVariant::dodec14: return {4, std::vector<std::size_t>{4, 4, 4, 2}};
    case BaseVariant::dodec8: return {2, std::vector<std::size_t>{4, 4}};
    case BaseVariant::dodec12: return {4, std::vector<std::size_t>{4, 4, 2, 2}};
    case BaseVariant::dodec10a: return {3, std::vector<std::size_t>{4, 4, 2}};
    case BaseVariant::dodec10b: return {1, std::vector<std::size_t>{10}};
  }
  return {};
}

}  // namespace

std::string_view to_string(BaseVariant v) {
  switch (v) {
    case BaseVariant::fig2: return "fig2";
    case BaseVariant::dodec6: return "dodec6";
    case BaseVariant::dodec14: return "dodec14";
    case BaseVariant::dodec8: return "dodec8";
    case BaseVariant::dodec12: return "dodec12";
    case BaseVariant::dodec10a: return "dodec10a";
    case BaseVariant::dodec10b: return "dodec10b";
  }
  return "unknown";
}

std::optional<BaseVariant> parse_base(std::string_view name) {
  for (auto v : kAllBases) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

SubsetPair base_subsets(BaseVariant v) {
  const std::size_t dodec_n = 20;
  switch (v) {
    case BaseVariant::fig2: return {PolyhedronKind::icosahedron, kFig2Left, kFig2Right};
    case BaseVariant::dodec6: return {PolyhedronKind::dodecahedron, kDodec6Left, kDodec6Right};
    case BaseVariant::dodec14:
      return {PolyhedronKind::dodecahedron, complement(dodec_n, kDodec6Left), complement(dodec_n, kDodec6Right)};
    case BaseVariant::dodec8: return {PolyhedronKind::dodecahedron, kDodec8Left, kDodec8Right};
    case BaseVariant::dodec12:
      return {PolyhedronKind::dodecahedron, complement(dodec_n, kDodec8Left), complement(dodec_n, kDodec8Right)};
    case BaseVariant::dodec10a: return {PolyhedronKind::dodecahedron, kDodec10aLeft, kDodec10aRight};
    case BaseVariant::dodec10b: return {PolyhedronKind::dodecahedron, kDodec10bLeft, kDodec10bRight};
  }
  throw std::invalid_argument("unknown base variant");
}

CounterexamplePair base_pair(BaseVariant variant) {
  auto subsets = base_subsets(variant);
  const auto poly = polyhedron(subsets.kind, 1.0);
  CounterexamplePair pair{subset_cloud(poly, subsets.left), subset_cloud(poly, subsets.right),
                          std::string(to_string(variant)), {}, expected_for(variant), std::move(subsets)};
  pair.params["polyhedron"] = std::string(to_string(pair.subsets->kind));
  return pair;
}

CounterexamplePair figure2_pair() { return base_pair(BaseVariant::fig2); }

CounterexamplePair dodecahedron_pair(BaseVariant variant) {
  if (variant == BaseVariant::fig2) throw std::invalid_argument("fig2 is an icosahedron pair");
  return base_pair(variant);
}

CounterexamplePair cube_octahedron_pair(double a, double b, CubeOctaVariant variant) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("cube and octahedron sizes must be positive");
  }
  std::vector<Vec3> octa;
  if (variant == CubeOctaVariant::red) {
    octa = {Vec3(0, 0, b), Vec3(0, 0, -b)};
  } else {
    octa = {Vec3(b, 0, 0), Vec3(-b, 0, 0), Vec3(0, b, 0), Vec3(0, -b, 0)};
  }
  // Diagonal rectangles of the cube: plane x = y (contains the z axis) and
  // plane y = z.
  const std::vector<Vec3> left_cube = {Vec3(a, a, a), Vec3(a, a, -a), Vec3(-a, -a, a), Vec3(-a, -a, -a)};
  const std::vector<Vec3> right_cube = {Vec3(a, a, a), Vec3(-a, a, a), Vec3(a, -a, -a), Vec3(-a, -a, -a)};

  auto join = [&](const std::vector<Vec3>& cube) {
    std::vector<Vec3> c = octa;
    c.insert(c.end(), cube.begin(), cube.end());
    return build_point_cloud(std::move(c));
  };
  CounterexamplePair pair{join(left_cube), join(right_cube), "cubeocta", {}, std::nullopt, std::nullopt};
  pair.params["a"] = format_real(a);
  pair.params["b"] = format_real(b);
  pair.params["variant"] = variant == CubeOctaVariant::red ? "red" : "blue";
  if (variant == CubeOctaVariant::red) {
    pair.expected_kinds = ExpectedKinds{2, std::nullopt};
  } else {
    pair.expected_kinds = ExpectedKinds{2, std::vector<std::size_t>{4, 4}};
  }
  return pair;
}

CounterexamplePair two_cubes_pair(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0) || !std::isfinite(a1) || !std::isfinite(a2)) {
    throw std::invalid_argument("cube sizes must be positive");
  }
  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  auto turned = [&](double x, double y, double z) { return Vec3(c * x - s * y, s * x + c * y, z); };

  const std::vector<Vec3> first = {Vec3(a1, a1, a1), Vec3(a1, a1, -a1), Vec3(-a1, -a1, a1), Vec3(-a1, -a1, -a1)};
  const std::vector<Vec3> second_left = {turned(a2, a2, a2), turned(a2, a2, -a2), turned(-a2, -a2, a2),
                                         turned(-a2, -a2, -a2)};
  const std::vector<Vec3> second_right = {turned(a2, a2, a2), turned(a2, -a2, -a2), turned(-a2, a2, a2),
                                          turned(-a2, -a2, -a2)};
  auto join = [&](const std::vector<Vec3>& second) {
    std::vector<Vec3> v = first;
    v.insert(v.end(), second.begin(), second.end());
    return build_point_cloud(std::move(v));
  };
  CounterexamplePair pair{join(second_left), join(second_right), "twocubes", {}, std::nullopt, std::nullopt};
  pair.params["a1"] = format_real(a1);
  pair.params["a2"] = format_real(a2);
  if (std::abs(a1 - a2) <= 1e-12 * std::max(a1, a2)) {
    pair.expected_kinds = ExpectedKinds{1, std::vector<std::size_t>{8}};
  } else {
    pair.expected_kinds = ExpectedKinds{2, std::vector<std::size_t>{4, 4}};
  }
  return pair;
}

std::string_view to_string(LayerType t) {
  switch (t) {
    case LayerType::ori: return "ori";
    case LayerType::com: return "com";
    case LayerType::all: return "all";
  }
  return "unknown";
}

LayerType parse_layer_type(std::string_view name) {
  for (auto t : {LayerType::ori, LayerType::com, LayerType::all}) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown layer type '" + std::string(name) + "'");
}

std::vector<LayerSpec> parse_layers(std::string_view text) {
  std::vector<LayerSpec> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("layer '" + std::string(item) + "' is not of the form type:radius");
    }
    LayerSpec spec;
    spec.type = parse_layer_type(item.substr(0, colon));
    const std::string radius(item.substr(colon + 1));
    std::size_t used = 0;
    try {
      spec.radius = std::stod(radius, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != radius.size()) throw std::invalid_argument("bad layer radius '" + radius + "'");
    out.push_back(spec);
    pos = comma + 1;
  }
  return out;
}

std::string format_layers(const std::vector<LayerSpec>& spec) {
  std::string out;
  for (const auto& layer : spec) {
    if (!out.empty()) out += ',';
    out += std::string(to_string(layer.type)) + ':' + format_real(layer.radius);
  }
  return out;
}

namespace {

void check_layers(const std::vector<LayerSpec>& spec) {
  if (spec.empty()) throw std::invalid_argument("augmentation needs at least one layer");
  bool has_partial = false;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!(spec[i].radius > 0.0) || !std::isfinite(spec[i].radius)) {
      throw std::invalid_argument("layer radii must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(spec[i].radius - spec[j].radius) <= 1e-9) {
        throw std::invalid_argument("layer radii must be pairwise distinct");
      }
    }
    has_partial |= spec[i].type != LayerType::all;
  }
  if (!has_partial) throw std::invalid_argument("at least one layer must be of type ori or com");
}

std::vector<std::size_t> layer_indices(LayerType type, std::size_t n, const std::vector<std::size_t>& subset) {
  switch (type) {
    case LayerType::ori: return subset;
    case LayerType::com: return complement(n, subset);
    case LayerType::all: {
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      return all;
    }
  }
  return {};
}

}  // namespace

CounterexamplePair augment_pair(const CounterexamplePair& base, const std::vector<LayerSpec>& spec) {
  if (!base.subsets) throw std::invalid_argument("augmentation needs a single-polyhedron base pair");
  check_layers(spec);
  const auto& subsets = *base.subsets;
  const auto poly = polyhedron(subsets.kind, 1.0);
  const std::size_t n = poly.vertices.size();

  auto side = [&](const std::vector<std::size_t>& subset) {
    std::vector<Vec3> coords;
    for (const auto& layer : spec) {
      for (auto i : layer_indices(layer.type, n, subset)) coords.push_back(poly.vertices[i] * layer.radius);
    }
    return build_point_cloud(std::move(coords));
  };
  CounterexamplePair out{side(subsets.left), side(subsets.right), "aug", {}, std::nullopt, std::nullopt};
  out.params["base"] = base.family;
  out.params["layers"] = format_layers(spec);
  return out;
}

// ---------------------------------------------------------------------------
// Stable-state machinery

namespace {

/// Joint 1-WL-E to stabilization; returns each side's colors densely
/// relabelled in first-seen order over (left, right).
std::pair<LabelState, LabelState> final_state(const PointCloud& left, const PointCloud& right, double tol) {
  const PointCloud clouds[2] = {left, right};
  const auto graphs = make_graphs(clouds, tol);
  RefinementConfig config;
  config.method = Method::wl1e;
  config.tol = tol;
  const auto results = refine_joint(graphs, config);
  std::map<Color, std::int64_t> dense;
  auto relabel = [&](const std::vector<Color>& colors) {
    LabelState out;
    for (auto c : colors) {
      auto [it, inserted] = dense.try_emplace(c, static_cast<std::int64_t>(dense.size()));
      out.push_back(it->second);
    }
    return out;
  };
  auto l = relabel(results[0].node_colors);
  auto r = relabel(results[1].node_colors);
  return {std::move(l), std::move(r)};
}

std::int64_t label_span(const LabelState& a, const LabelState& b) {
  std::int64_t m = -1;
  for (auto x : a) m = std::max(m, x);
  for (auto x : b) m = std::max(m, x);
  return m + 1;
}

}  // namespace

LabelState ComplementaryLabels::left_all() const {
  LabelState out = left_ori;
  out.insert(out.end(), left_com.begin(), left_com.end());
  return out;
}

LabelState ComplementaryLabels::right_all() const {
  LabelState out = right_ori;
  out.insert(out.end(), right_com.begin(), right_com.end());
  return out;
}

ComplementaryLabels complementary_labels(const CounterexamplePair& base, double tol) {
  if (!base.subsets) throw std::invalid_argument("complementary labels need a single-polyhedron base pair");
  const auto& subsets = *base.subsets;
  const auto poly = polyhedron(subsets.kind, 1.0);
  const std::size_t n = poly.vertices.size();

  ComplementaryLabels out;
  std::tie(out.left_ori, out.right_ori) =
      final_state(subset_cloud(poly, subsets.left), subset_cloud(poly, subsets.right), tol);
  const auto left_com = complement(n, subsets.left);
  const auto right_com = complement(n, subsets.right);
  if (!left_com.empty() || !right_com.empty()) {
    std::tie(out.left_com, out.right_com) =
        final_state(subset_cloud(poly, left_com), subset_cloud(poly, right_com), tol);
  }
  const auto offset = label_span(out.left_ori, out.right_ori);
  for (auto& x : out.left_com) x += offset;
  for (auto& x : out.right_com) x += offset;
  return out;
}

CounterexamplePair all_layer_pair(const CounterexamplePair& base) {
  if (!base.subsets) throw std::invalid_argument("all-layer pair needs a single-polyhedron base pair");
  const auto& subsets = *base.subsets;
  const auto poly = polyhedron(subsets.kind, 1.0);
  const std::size_t n = poly.vertices.size();
  auto ordered = [&](const std::vector<std::size_t>& subset) {
    auto order = subset;
    const auto rest = complement(n, subset);
    order.insert(order.end(), rest.begin(), rest.end());
    return subset_cloud(poly, order);
  };
  CounterexamplePair out{ordered(subsets.left), ordered(subsets.right), "all:" + base.family, {}, std::nullopt,
                         std::nullopt};
  return out;
}

bool verify_stable_state(const CounterexamplePair& pair_all, const LabelState& init_left,
                         const LabelState& init_right, double tol) {
  if (init_left.size() != pair_all.left.size() || init_right.size() != pair_all.right.size()) {
    throw std::invalid_argument("initial labels must be total");
  }
  const PointCloud clouds[2] = {pair_all.left, pair_all.right};
  const auto graphs = make_graphs(clouds, tol);

  std::map<std::int64_t, Color> dense;
  auto to_colors = [&](const LabelState& labels) {
    std::vector<Color> colors;
    for (auto l : labels) colors.push_back(dense.try_emplace(l, static_cast<Color>(dense.size())).first->second);
    return colors;
  };
  const std::vector<std::vector<Color>> initial = {to_colors(init_left), to_colors(init_right)};

  RefinementConfig config;
  config.method = Method::wl1e;
  config.rounds = 1;
  config.stop_when_stable = false;
  config.tol = tol;
  ColorSession session;
  const auto results = refine_joint_from(graphs, initial, config, session);
  for (const auto& r : results) {
    if (r.per_round_class_counts.at(1) != r.per_round_class_counts.at(0)) return false;
  }
  return results[0].per_round_histograms.at(1) == results[1].per_round_histograms.at(1);
}

std::pair<LabelState, LabelState> augmented_initial_labels(const CounterexamplePair& base,
                                                           const std::vector<LayerSpec>& spec, double tol) {
  if (!base.subsets) throw std::invalid_argument("augmentation needs a single-polyhedron base pair");
  check_layers(spec);
  const auto& subsets = *base.subsets;
  const std::size_t n = vertex_count(subsets.kind);
  const auto labels = complementary_labels(base, tol);
  const auto span = std::max(label_span(labels.left_ori, labels.right_ori),
                             label_span(labels.left_com, labels.right_com));

  auto side = [&](const std::vector<std::size_t>& subset, const LabelState& ori, const LabelState& com) {
    // Per-vertex stable label on the full polyhedron.
    std::vector<std::int64_t> by_vertex(n, 0);
    for (std::size_t i = 0; i < subset.size(); ++i) by_vertex[subset[i]] = ori[i];
    const auto rest = complement(n, subset);
    for (std::size_t i = 0; i < rest.size(); ++i) by_vertex[rest[i]] = com[i];

    LabelState out;
    std::int64_t offset = 0;
    for (const auto& layer : spec) {
      for (auto v : layer_indices(layer.type, n, subset)) out.push_back(by_vertex[v] + offset);
      offset += span;
    }
    return out;
  };
  return {side(subsets.left, labels.left_ori, labels.left_com),
          side(subsets.right, labels.right_ori, labels.right_com)};
}

VerificationReport verify_counterexample(const CounterexamplePair& pair, double tol) {
  VerificationReport report;
  report.expected_kinds = pair.expected_kinds;
  report.oracle = congruent_bruteforce(pair.left, pair.right, tol);
  if (report.oracle.congruent) report.reasons.emplace_back("congruent");

  RefinementConfig config;
  config.method = Method::wl1e;
  config.tol = tol;
  report.wl = distinguish(pair.left, pair.right, config);
  if (report.wl.distinguished) report.reasons.emplace_back("distinguished by 1-WL-E");

  const PointCloud clouds[2] = {pair.left, pair.right};
  const auto graphs = make_graphs(clouds, tol);
  const auto results = refine_joint(graphs, config);
  report.kinds_left = class_sizes(results[0].node_colors);
  report.kinds_right = class_sizes(results[1].node_colors);

  if (pair.expected_kinds) {
    const auto& expected = *pair.expected_kinds;
    report.kinds_match = report.kinds_left.size() == expected.count && report.kinds_right.size() == expected.count;
    if (expected.sizes) {
      report.kinds_match = report.kinds_match && report.kinds_left == *expected.sizes &&
                           report.kinds_right == *expected.sizes;
    }
    if (!report.kinds_match) report.reasons.emplace_back("kind counts differ from expected");
  }
  report.pass = report.reasons.empty();
  return report;
}

std::vector<LayerSpec> sample_layer_spec(std::uint64_t seed, int max_layers) {
  if (max_layers < 1) throw std::invalid_argument("max_layers must be positive");
  Rng rng(mix_seed(seed, 0xa06));
  const auto count = static_cast<std::size_t>(1 + rng.below(static_cast<std::uint64_t>(max_layers)));
  std::vector<LayerSpec> spec(count);
  constexpr LayerType kTypes[] = {LayerType::ori, LayerType::com, LayerType::all};
  for (auto& layer : spec) layer.type = kTypes[rng.below(3)];
  if (std::all_of(spec.begin(), spec.end(), [](const LayerSpec& l) { return l.type == LayerType::all; })) {
    spec[rng.below(count)].type = rng.below(2) == 0 ? LayerType::ori : LayerType::com;
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (;;) {
      const double r = rng.uniform(0.5, 3.0);
      const bool clear = std::none_of(spec.begin(), spec.begin() + static_cast<std::ptrdiff_t>(i),
                                      [&](const LayerSpec& l) { return std::abs(l.radius - r) < 0.05; });
      if (clear) {
        spec[i].radius = r;
        break;
      }
    }
  }
  return spec;
}

std::vector<std::string> family_names() {
  std::vector<std::string> names;
  for (auto v : kAllBases) names.emplace_back(to_string(v));
  names.emplace_back("cubeocta");
  names.emplace_back("twocubes");
  names.emplace_back("aug");
  return names;
}

std::vector<CounterexamplePair> sample_family(std::string_view family, std::size_t samples, std::uint64_t seed) {
  if (auto base = parse_base(family)) return {base_pair(*base)};
  std::vector<CounterexamplePair> out;
  Rng rng(mix_seed(seed, 0xfa));
  if (family == "cubeocta") {
    for (std::size_t i = 0; i < samples; ++i) {
      const double a = rng.uniform(0.5, 2.0);
      const double b = rng.uniform(0.5, 2.0);
      out.push_back(cube_octahedron_pair(a, b, CubeOctaVariant::red));
      out.push_back(cube_octahedron_pair(a, b, CubeOctaVariant::blue));
    }
  } else if (family == "twocubes") {
    for (std::size_t i = 0; i < samples; ++i) {
      const double a1 = rng.uniform(0.5, 2.0);
      double a2 = a1;
      if (i % 2 == 1) {
        // Keep the sizes visibly apart.
        do a2 = rng.uniform(0.5, 2.0);
        while (std::abs(a2 - a1) < 0.05);
      }
      out.push_back(two_cubes_pair(a1, a2));
    }
  } else if (family == "aug") {
    for (std::size_t i = 0; i < samples; ++i) {
      const auto base = kAllBases[rng.below(std::size(kAllBases))];
      out.push_back(augment_pair(base_pair(base), sample_layer_spec(rng.bits())));
    }
  } else {
    throw std::invalid_argument("unknown family '" + std::string(family) + "'");
  }
  return out;
}

}  // namespace diswl
