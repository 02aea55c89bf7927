#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diswl/geometry.hpp"
#include "diswl/wl_engine.hpp"

namespace diswl {

enum class PolyhedronKind { icosahedron, dodecahedron, cube, octahedron };

std::string_view to_string(PolyhedronKind kind);

struct Polyhedron {
  PolyhedronKind kind = PolyhedronKind::cube;
  double circumradius = 1.0;
  std::vector<Vec3> vertices;
};

/// Regular polyhedron centred at the origin. The vertex order is fixed and is
/// what the subset indices of the built-in counterexamples refer to:
///   icosahedron  : for s1, s2 in (+,-): (0,s1,s2 phi), (s1,s2 phi,0), (s2 phi,0,s1)
///   dodecahedron : (+-1,+-1,+-1) with x outermost, then for s1, s2 in (+,-):
///                  (0,s1/phi,s2 phi), (s1/phi,s2 phi,0), (s1 phi,0,s2/phi)
///   cube         : (+-1,+-1,+-1) with x outermost
///   octahedron   : +x, -x, +y, -y, +z, -z
/// all scaled to the requested circumradius.
Polyhedron polyhedron(PolyhedronKind kind, double circumradius);

/// Node multiset sizes of the stable 1-WL-E partition ("kinds").
struct ExpectedKinds {
  std::size_t count = 0;
  std::optional<std::vector<std::size_t>> sizes;  ///< largest first, when known
};

/// Which vertices of a polyhedron each side of a base pair samples.
struct SubsetPair {
  PolyhedronKind kind = PolyhedronKind::dodecahedron;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

struct CounterexamplePair {
  PointCloud left;
  PointCloud right;
  std::string family;
  std::map<std::string, std::string> params;
  std::optional<ExpectedKinds> expected_kinds;
  /// Present for the single-polyhedron bases; needed for augmentation.
  std::optional<SubsetPair> subsets;
};

/// Single-polyhedron bases: fig2 from the icosahedron, the rest from the
/// dodecahedron.
enum class BaseVariant { fig2, dodec6, dodec14, dodec8, dodec12, dodec10a, dodec10b };

inline constexpr BaseVariant kAllBases[] = {BaseVariant::fig2,     BaseVariant::dodec6,   BaseVariant::dodec14,
                                            BaseVariant::dodec8,   BaseVariant::dodec12,  BaseVariant::dodec10a,
                                            BaseVariant::dodec10b};

std::string_view to_string(BaseVariant v);
std::optional<BaseVariant> parse_base(std::string_view name);

/// Vertex subsets of the built-in base pairs (unit-circumradius polyhedra).
SubsetPair base_subsets(BaseVariant v);

/// Icosahedron pair: every node of both clouds has the same distance list;
/// the right cloud holds two edge-length equilateral triangles, the left none.
CounterexamplePair figure2_pair();

/// Dodecahedron pairs. Throws std::invalid_argument for BaseVariant::fig2.
CounterexamplePair dodecahedron_pair(BaseVariant variant);

CounterexamplePair base_pair(BaseVariant variant);

enum class CubeOctaVariant { red, blue };

/// Cube (side 2a) and octahedron (half-diagonal b) sharing a centre, with the
/// octahedron vertices on the cube face normals. Red keeps the two octahedron
/// vertices on the z axis, blue the four in the z = 0 plane; both sides keep a
/// diagonal rectangle of four cube vertices (plane x = y on the left, y = z on
/// the right). Throws std::invalid_argument unless a, b > 0.
CounterexamplePair cube_octahedron_pair(double a, double b, CubeOctaVariant variant);

/// Two cubes (half sides a1, a2) sharing a centre and the z face axis, the
/// second turned 45 degrees about z. Each contributes four vertices spanning
/// a diagonal rectangle. Throws std::invalid_argument unless a1, a2 > 0.
CounterexamplePair two_cubes_pair(double a1, double a2);

enum class LayerType { ori, com, all };

std::string_view to_string(LayerType t);
LayerType parse_layer_type(std::string_view name);

struct LayerSpec {
  LayerType type = LayerType::ori;
  double radius = 1.0;
};

/// Parses "ori:1.0,all:2.0,com:3.0".
std::vector<LayerSpec> parse_layers(std::string_view text);
std::string format_layers(const std::vector<LayerSpec>& spec);

/// Concentric layers built from a base pair: ori = the sampled vertices,
/// com = the remaining polyhedron vertices, all = every vertex; each layer is
/// the unit-circumradius polyhedron scaled to its radius. Nodes are ordered
/// layer by layer, polyhedron order within a layer. Throws
/// std::invalid_argument if the base has no subsets, radii repeat (within
/// 1e-9) or are non-positive, or every layer is of type all.
CounterexamplePair augment_pair(const CounterexamplePair& base, const std::vector<LayerSpec>& spec);

/// Total map node -> label.
using LabelState = std::vector<std::int64_t>;

/// Final (stable) 1-WL-E labels of the ori and com sub-clouds of each side.
/// Labels are dense over both sides jointly; com labels are offset past the
/// ori labels so the two never collide.
struct ComplementaryLabels {
  LabelState left_ori, left_com, right_ori, right_com;

  /// Labels for the all-layer cloud ordered ori nodes first, then com nodes.
  LabelState left_all() const;
  LabelState right_all() const;
};

ComplementaryLabels complementary_labels(const CounterexamplePair& base, double tol = kDefaultTolerance);

/// The full polyhedron on each side, ordered: that side's sampled vertices,
/// then its complement. Labels are all zero.
CounterexamplePair all_layer_pair(const CounterexamplePair& base);

/// True iff one 1-WL-E round from the given labels refines neither side's
/// partition and leaves the two sides' histograms equal.
bool verify_stable_state(const CounterexamplePair& pair_all, const LabelState& init_left,
                         const LabelState& init_right, double tol = kDefaultTolerance);

/// Layer-wise initial labels of an augmented pair: each layer carries the
/// ori / com / ori-then-com stable labels of its type, offset per layer.
std::pair<LabelState, LabelState> augmented_initial_labels(const CounterexamplePair& base,
                                                           const std::vector<LayerSpec>& spec,
                                                           double tol = kDefaultTolerance);

struct VerificationReport {
  CongruenceVerdict oracle;
  Verdict wl;
  std::vector<std::size_t> kinds_left;   ///< stable 1-WL-E class sizes, largest first
  std::vector<std::size_t> kinds_right;
  std::optional<ExpectedKinds> expected_kinds;
  bool kinds_match = true;
  std::vector<std::string> reasons;  ///< empty iff pass
  bool pass = false;
};

/// Random layer spec: 1 to max_layers layers, at least one of type ori or
/// com, radii in [0.5, 3] at least 0.05 apart. Deterministic in seed.
std::vector<LayerSpec> sample_layer_spec(std::uint64_t seed, int max_layers = 4);

/// Family names accepted by sample_family: the base names, "cubeocta",
/// "twocubes" and "aug".
std::vector<std::string> family_names();

/// Seeded instances of a family. Bases ignore samples and seed and return
/// their single pair. cubeocta yields a red and a blue pair per (a, b) drawn
/// from [0.5, 2]; twocubes alternates equal and unequal sizes; aug draws a layer spec and a
/// base per sample. Throws std::invalid_argument for unknown names.
std::vector<CounterexamplePair> sample_family(std::string_view family, std::size_t samples, std::uint64_t seed);

/// Checks non-congruence, 1-WL-E indistinguishability and the expected kind
/// counts. Failures are reported, never thrown.
VerificationReport verify_counterexample(const CounterexamplePair& pair, double tol = kDefaultTolerance);

}  // namespace diswl
