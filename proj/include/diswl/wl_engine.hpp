#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diswl/geometry.hpp"

namespace diswl {

using Color = std::uint32_t;

enum class Method { wl1, wl1e, kwl, kfwl, kewl };

std::string_view to_string(Method m);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);

/// True for the tuple methods (kwl, kfwl, kewl).
constexpr bool is_tuple_method(Method m) { return m == Method::kwl || m == Method::kfwl || m == Method::kewl; }

inline constexpr std::size_t kDefaultMaxTuples = 2'000'000;

struct RefinementConfig {
  Method method = Method::wl1e;
  int k = 2;                          ///< ignored for wl1 / wl1e
  std::optional<int> rounds;          ///< nullopt = until stable
  double tol = kDefaultTolerance;
  std::size_t max_tuples = kDefaultMaxTuples;
  /// When false, a fixed round budget is always run to completion even after
  /// the partition stabilizes (colors of equal rounds stay comparable across
  /// calls sharing a session).
  bool stop_when_stable = true;

  /// Tuple order actually used: 1 for the node methods.
  int order() const { return is_tuple_method(method) ? k : 1; }
};

/// Thrown when n^k exceeds RefinementConfig::max_tuples.
class TupleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distance graph ready for refinement.
struct Graph {
  QuantizedDistanceMatrix distances;
  std::vector<std::int64_t> labels;

  std::size_t size() const { return distances.source_n; }
};

/// Builds graphs for several clouds over one jointly quantized distance
/// alphabet, so their colors can be compared.
std::vector<Graph> make_graphs(std::span<const PointCloud> clouds, double tol = kDefaultTolerance);

/// (color, count) sorted by color.
using Histogram = std::vector<std::pair<Color, std::size_t>>;

Histogram histogram_of(std::span<const Color> colors);

/// Colors of every tuple of V^k (or every node) after some round. Tuple
/// (v_1..v_k) lives at index sum v_i * n^(k-i).
struct ColorTable {
  std::vector<Color> colors;
  int round = 0;
};

struct RefinementResult {
  Method method = Method::wl1e;
  int k = 1;
  std::size_t n = 0;
  std::vector<Histogram> per_round_histograms;  ///< rounds 0..last computed
  /// Last round whose successor would not refine the (joint) partition.
  std::optional<int> stable_round;
  ColorTable final;
  /// Per-node colors: the node colors for wl1/wl1e, otherwise the pooled
  /// multiset of final tuple colors whose first entry is the node.
  std::vector<Color> node_colors;
  /// Number of distinct colors in each computed round.
  std::vector<std::size_t> per_round_class_counts;
  /// Wall time of every round step attempted, including a final one that
  /// found the partition stable. Joint over all graphs of the call.
  std::vector<double> round_ms;
};

/// Interning dictionaries shared by every graph refined in one session.
///
/// Signatures of a given round are mapped to dense ids in first-seen order,
/// and graphs are always processed in their given order, so ids do not depend
/// on the thread count. Colors from different refine calls are comparable
/// whenever they used the same session, method and k.
class ColorSession {
 public:
  ColorSession();
  ~ColorSession();
  ColorSession(ColorSession&&) noexcept;
  ColorSession& operator=(ColorSession&&) noexcept;

  struct Impl;
  Impl& impl() { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

/// Round-0 colors of all n^k tuples: two tuples share a color iff their
/// ordered label vectors and ordered k x k distance-class matrices agree.
ColorTable init_tuple_colors(const Graph& g, int k, ColorSession& session);

/// Refines several graphs jointly with shared hashing. Stops at the round
/// budget or when the joint partition stops refining, whichever is first.
std::vector<RefinementResult> refine_joint(std::span<const Graph> graphs, const RefinementConfig& config,
                                           ColorSession& session);
std::vector<RefinementResult> refine_joint(std::span<const Graph> graphs, const RefinementConfig& config);

/// Same as refine_joint but every graph starts from the given node colors
/// instead of its labels. Node methods only.
std::vector<RefinementResult> refine_joint_from(std::span<const Graph> graphs,
                                                std::span<const std::vector<Color>> initial,
                                                const RefinementConfig& config, ColorSession& session);

RefinementResult refine(const Graph& g, const RefinementConfig& config);
RefinementResult refine_wl1(const Graph& g, RefinementConfig config);
RefinementResult refine_wl1e(const Graph& g, RefinementConfig config);
RefinementResult refine_kwl(const Graph& g, RefinementConfig config);
RefinementResult refine_kfwl(const Graph& g, RefinementConfig config);
RefinementResult refine_kewl(const Graph& g, RefinementConfig config);

/// Edge colors e_ij^t for k-E-WL, computed from a tuple coloring: hash of
/// the distance class together with, for each position pair u < v, the
/// multiset of colors of tuples w with w_u = i and w_v = j.
std::vector<Color> edge_colors(const Graph& g, int k, std::span<const Color> tuple_colors,
                               ColorSession& session, int round);

struct Verdict {
  bool distinguished = false;
  std::optional<int> separation_round;
  Method method = Method::wl1e;
  int k = 1;
  std::optional<int> rounds;
  int rounds_computed = 0;
};

/// Joint quantization plus joint refinement of two clouds; distinguished iff
/// some round's histograms differ.
Verdict distinguish(const PointCloud& a, const PointCloud& b, const RefinementConfig& config);

/// Sorted class sizes of a node coloring, largest first.
std::vector<std::size_t> class_sizes(std::span<const Color> colors);

}  // namespace diswl
