#include "diswl/wl_engine.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <numeric>
#include <string>

#include "diswl/parallel.hpp"

namespace diswl {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::wl1: return "wl1";
    case Method::wl1e: return "wl1e";
    case Method::kwl: return "kwl";
    case Method::kfwl: return "kfwl";
    case Method::kewl: return "kewl";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::wl1, Method::wl1e, Method::kwl, Method::kfwl, Method::kewl}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Signature interning

namespace {

using Signature = std::span<const std::uint32_t>;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 32;
  x *= 0xd6e8feb86659fd93ULL;
  x ^= x >> 32;
  return x;
}

/// Four independent multiply lanes over 64-bit words.
std::uint64_t hash_signature(Signature s) noexcept {
  std::uint64_t lane[4] = {0x9e3779b97f4a7c15ULL ^ s.size(), 0xbf58476d1ce4e5b9ULL, 0x94d049bb133111ebULL,
                           0x2545f4914f6cdd1dULL};
  const auto* p = s.data();
  std::size_t i = 0;
  auto word = [&](std::size_t j) { return (std::uint64_t{p[j]} << 32) | p[j + 1]; };
  for (; i + 8 <= s.size(); i += 8) {
    for (int l = 0; l < 4; ++l) lane[l] = (lane[l] ^ word(i + 2 * static_cast<std::size_t>(l))) * 0x9fb21c651e98df25ULL;
  }
  for (; i < s.size(); ++i) lane[0] = (lane[0] ^ p[i]) * 0x9fb21c651e98df25ULL;
  return mix64(lane[0] ^ mix64(lane[1]) ^ mix64(mix64(lane[2])) ^ (lane[3] << 17 | lane[3] >> 47));
}

/// Open addressing over an arena of stored signatures. Ids are dense in
/// first-seen order.
class Interner {
 public:
  Color intern(Signature sig) { return intern(sig, hash_signature(sig)); }

  Color intern(Signature sig, std::uint64_t hash) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t pos = hash & mask;; pos = (pos + 1) & mask) {
      const auto slot = slots_[pos];
      if (slot == 0) {
        const auto id = static_cast<Color>(count_++);
        slots_[pos] = id + 1;
        hashes_.push_back(hash);
        arena_.insert(arena_.end(), sig.begin(), sig.end());
        offsets_.push_back(arena_.size());
        return id;
      }
      if (hashes_[slot - 1] == hash && stored(slot - 1).size() == sig.size() &&
          std::equal(sig.begin(), sig.end(), stored(slot - 1).begin())) {
        return slot - 1;
      }
    }
  }
  std::size_t size() const { return count_; }

 private:
  Signature stored(std::size_t id) const {
    return Signature(arena_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]);
  }
  void grow() {
    std::vector<std::uint32_t> next(std::max<std::size_t>(64, slots_.size() * 2), 0);
    const std::size_t mask = next.size() - 1;
    for (std::size_t id = 0; id < count_; ++id) {
      auto pos = hashes_[id] & mask;
      while (next[pos] != 0) pos = (pos + 1) & mask;
      next[pos] = static_cast<std::uint32_t>(id + 1);
    }
    slots_ = std::move(next);
  }

  std::size_t count_ = 0;
  std::vector<std::uint32_t> slots_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> arena_;
  std::vector<std::size_t> offsets_{0};
};

constexpr std::uint32_t kExternalInit = 0xffffffffu;

/// Upper bound on k; n^k tuples make anything larger impractical anyway.
constexpr int kMaxOrder = 16;

std::size_t ipow(std::size_t n, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r *= n;
  return r;
}

}  // namespace

struct ColorSession::Impl {
  Interner init;
  std::vector<Interner> tuple_rounds;
  std::vector<Interner> edge_rounds;
  Interner node_pool;

  Interner& round(std::size_t t) {
    if (tuple_rounds.size() <= t) tuple_rounds.resize(t + 1);
    return tuple_rounds[t];
  }
  Interner& edges(std::size_t t) {
    if (edge_rounds.size() <= t) edge_rounds.resize(t + 1);
    return edge_rounds[t];
  }
};

ColorSession::ColorSession() : impl_(std::make_unique<Impl>()) {}
ColorSession::~ColorSession() = default;
ColorSession::ColorSession(ColorSession&&) noexcept = default;
ColorSession& ColorSession::operator=(ColorSession&&) noexcept = default;

// ---------------------------------------------------------------------------

std::vector<Graph> make_graphs(std::span<const PointCloud> clouds, double tol) {
  std::vector<DistanceMatrix> matrices;
  matrices.reserve(clouds.size());
  for (const auto& pc : clouds) matrices.push_back(distance_matrix(pc));
  auto quantized = canonicalize_distances(matrices, tol);
  std::vector<Graph> graphs;
  graphs.reserve(clouds.size());
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    graphs.push_back(Graph{std::move(quantized[i]), clouds[i].labels()});
  }
  return graphs;
}

Histogram histogram_of(std::span<const Color> colors) {
  std::vector<Color> sorted(colors.begin(), colors.end());
  std::sort(sorted.begin(), sorted.end());
  Histogram h;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    h.emplace_back(sorted[i], j - i);
    i = j;
  }
  return h;
}

std::vector<std::size_t> class_sizes(std::span<const Color> colors) {
  std::vector<std::size_t> sizes;
  for (const auto& [c, count] : histogram_of(colors)) sizes.push_back(count);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

namespace {

/// Digit helpers for tuple indices in base n, most significant first.
struct TupleIndexer {
  std::size_t n;
  int k;
  std::vector<std::size_t> place;  // place[j] = n^(k-1-j)

  TupleIndexer(std::size_t n_, int k_) : n(n_), k(k_), place(static_cast<std::size_t>(k_)) {
    std::size_t p = 1;
    for (int j = k - 1; j >= 0; --j) {
      place[static_cast<std::size_t>(j)] = p;
      p *= n;
    }
  }
  std::size_t digit(std::size_t idx, int j) const { return (idx / place[static_cast<std::size_t>(j)]) % n; }
  std::size_t replace(std::size_t idx, int j, std::size_t w) const {
    const auto pj = place[static_cast<std::size_t>(j)];
    return idx - digit(idx, j) * pj + w * pj;
  }
};

std::size_t checked_tuple_count(const Graph& g, int k, std::size_t cap) {
  if (k < 1) throw std::invalid_argument("tuple order must be at least 1");
  if (k > kMaxOrder) throw std::invalid_argument("tuple order above " + std::to_string(kMaxOrder));
  unsigned __int128 count = 1;
  for (int i = 0; i < k && count <= cap; ++i) count *= g.size();
  if (count > cap) {
    throw TupleLimitExceeded(std::to_string(g.size()) + "^" + std::to_string(k) +
                             " tuples exceeds the configured cap of " + std::to_string(cap));
  }
  return static_cast<std::size_t>(count);
}

/// Fixed-stride signature buffer filled in parallel, interned serially.
template <typename Fill>
std::vector<Color> compute_round(std::size_t count, std::size_t stride, Interner& interner, Fill&& fill) {
  std::vector<Color> out(count);
  const std::size_t block = std::max<std::size_t>(1, (std::size_t{1} << 22) / std::max<std::size_t>(stride, 1));
  std::vector<std::uint32_t> buffer;
  std::vector<std::uint64_t> hashes;
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t len = std::min(block, count - start);
    buffer.assign(len * stride, 0);
    hashes.resize(len);
    parallel_for(len, [&](std::size_t b, std::size_t e) {
      for (std::size_t r = b; r < e; ++r) {
        const std::span<std::uint32_t> sig(buffer.data() + r * stride, stride);
        fill(start + r, sig);
        hashes[r] = hash_signature(sig);
      }
    });
    for (std::size_t r = 0; r < len; ++r) {
      out[start + r] = interner.intern(Signature(buffer.data() + r * stride, stride), hashes[r]);
    }
  }
  return out;
}

inline std::uint64_t pack(std::uint32_t hi, std::uint32_t lo) { return (std::uint64_t{hi} << 32) | lo; }

inline void unpack_into(std::span<const std::uint64_t> packed, std::uint32_t* out) {
  for (auto p : packed) {
    *out++ = static_cast<std::uint32_t>(p >> 32);
    *out++ = static_cast<std::uint32_t>(p);
  }
}

std::vector<Color> step_wl1(const Graph& g, std::span<const Color> prev, Interner& interner) {
  const std::size_t n = g.size();
  const std::size_t stride = n;  // own color + n-1 neighbors
  return compute_round(n, stride, interner, [&](std::size_t i, std::span<std::uint32_t> sig) {
    sig[0] = prev[i];
    std::size_t p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sig[p++] = prev[j];
    }
    std::sort(sig.begin() + 1, sig.end());
  });
}

std::vector<Color> step_wl1e(const Graph& g, std::span<const Color> prev, Interner& interner) {
  const std::size_t n = g.size();
  const std::size_t stride = 1 + 2 * (n - 1);
  return compute_round(n, stride, interner, [&](std::size_t i, std::span<std::uint32_t> sig) {
    std::vector<std::uint64_t> items;
    items.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) items.push_back(pack(prev[j], g.distances(i, j)));
    }
    std::sort(items.begin(), items.end());
    sig[0] = prev[i];
    unpack_into(items, sig.data() + 1);
  });
}

/// Per-position index of tuple idx with digit j zeroed: neighbor w at
/// position j is base[j] + w * place[j].
void replacement_bases(const TupleIndexer& ix, std::size_t idx, std::size_t* base, std::size_t* digits) {
  for (int j = 0; j < ix.k; ++j) {
    const auto pj = ix.place[static_cast<std::size_t>(j)];
    const auto d = (idx / pj) % ix.n;
    digits[j] = d;
    base[j] = idx - d * pj;
  }
}

std::vector<Color> step_kwl(const Graph& g, int k, std::span<const Color> prev, Interner& interner) {
  const std::size_t n = g.size();
  const TupleIndexer ix(n, k);
  const std::size_t stride = 1 + static_cast<std::size_t>(k) * n;
  return compute_round(prev.size(), stride, interner, [&](std::size_t idx, std::span<std::uint32_t> sig) {
    std::size_t base[kMaxOrder], digits[kMaxOrder];
    replacement_bases(ix, idx, base, digits);
    sig[0] = prev[idx];
    for (int j = 0; j < k; ++j) {
      auto* block = sig.data() + 1 + static_cast<std::size_t>(j) * n;
      const auto pj = ix.place[static_cast<std::size_t>(j)];
      for (std::size_t w = 0; w < n; ++w) block[w] = prev[base[j] + w * pj];
      std::sort(block, block + n);
    }
  });
}

/// Sorts the n ordered neighbor vectors of width K and writes them out.
template <int K>
void sorted_rows(const TupleIndexer& ix, std::span<const Color> prev, const std::size_t* base, std::uint32_t* out) {
  thread_local std::vector<std::array<std::uint32_t, K>> rows;
  rows.resize(ix.n);
  for (std::size_t w = 0; w < ix.n; ++w) {
    for (int u = 0; u < K; ++u) rows[w][static_cast<std::size_t>(u)] = prev[base[u] + w * ix.place[static_cast<std::size_t>(u)]];
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) out = std::copy(r.begin(), r.end(), out);
}

std::vector<Color> step_kfwl(const Graph& g, int k, std::span<const Color> prev, Interner& interner) {
  const std::size_t n = g.size();
  const TupleIndexer ix(n, k);
  const auto ku = static_cast<std::size_t>(k);
  const std::size_t stride = 1 + ku * n;
  // Three colors below 2^21 fit one 64-bit sort key.
  const bool pack3 = k == 3 && !prev.empty() && *std::max_element(prev.begin(), prev.end()) < (1u << 21);
  return compute_round(prev.size(), stride, interner, [&](std::size_t idx, std::span<std::uint32_t> sig) {
    std::size_t base[kMaxOrder], digits[kMaxOrder];
    replacement_bases(ix, idx, base, digits);
    sig[0] = prev[idx];
    if (pack3) {
      thread_local std::vector<std::uint64_t> items;
      items.resize(n);
      for (std::size_t w = 0; w < n; ++w) {
        items[w] = (std::uint64_t{prev[base[0] + w * ix.place[0]]} << 42) |
                   (std::uint64_t{prev[base[1] + w * ix.place[1]]} << 21) | prev[base[2] + w];
      }
      std::sort(items.begin(), items.end());
      auto* out = sig.data() + 1;
      constexpr std::uint64_t m21 = (1u << 21) - 1;
      for (auto x : items) {
        *out++ = static_cast<std::uint32_t>(x >> 42);
        *out++ = static_cast<std::uint32_t>((x >> 21) & m21);
        *out++ = static_cast<std::uint32_t>(x & m21);
      }
      return;
    }
    switch (k) {
      case 2: {
        thread_local std::vector<std::uint64_t> items;
        items.resize(n);
        for (std::size_t w = 0; w < n; ++w) items[w] = pack(prev[base[0] + w * ix.place[0]], prev[base[1] + w]);
        std::sort(items.begin(), items.end());
        unpack_into(items, sig.data() + 1);
        return;
      }
      case 3: sorted_rows<3>(ix, prev, base, sig.data() + 1); return;
      case 4: sorted_rows<4>(ix, prev, base, sig.data() + 1); return;
      default: break;
    }
    thread_local std::vector<std::uint32_t> rows;
    thread_local std::vector<std::size_t> order;
    rows.resize(ku * n);
    order.resize(n);
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t u = 0; u < ku; ++u) rows[w * ku + u] = prev[base[u] + w * ix.place[u]];
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(rows.begin() + static_cast<std::ptrdiff_t>(a * ku),
                                          rows.begin() + static_cast<std::ptrdiff_t>((a + 1) * ku),
                                          rows.begin() + static_cast<std::ptrdiff_t>(b * ku),
                                          rows.begin() + static_cast<std::ptrdiff_t>((b + 1) * ku));
    });
    auto* out = sig.data() + 1;
    for (auto w : order) out = std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(w * ku), ku, out);
  });
}

std::vector<Color> step_kewl(const Graph& g, int k, std::span<const Color> prev, std::span<const Color> edges,
                             Interner& interner) {
  const std::size_t n = g.size();
  const TupleIndexer ix(n, k);
  const std::size_t stride = 1 + 2 * static_cast<std::size_t>(k) * n;
  return compute_round(prev.size(), stride, interner, [&](std::size_t idx, std::span<std::uint32_t> sig) {
    std::size_t base[kMaxOrder], digits[kMaxOrder];
    replacement_bases(ix, idx, base, digits);
    sig[0] = prev[idx];
    thread_local std::vector<std::uint64_t> items;
    items.resize(n);
    for (int j = 0; j < k; ++j) {
      const auto pj = ix.place[static_cast<std::size_t>(j)];
      const auto* edge_row = edges.data() + digits[j] * n;
      for (std::size_t w = 0; w < n; ++w) items[w] = pack(prev[base[j] + w * pj], edge_row[w]);
      std::sort(items.begin(), items.end());
      unpack_into(items, sig.data() + 1 + 2 * static_cast<std::size_t>(j) * n);
    }
  });
}

std::vector<Color> pooled_node_colors(const Graph& g, int k, int round, std::span<const Color> colors,
                                      Interner& pool) {
  const std::size_t n = g.size();
  const std::size_t per_node = colors.size() / n;
  std::vector<Color> out(n);
  std::vector<std::uint32_t> sig(2 + per_node);
  for (std::size_t m = 0; m < n; ++m) {
    sig[0] = static_cast<std::uint32_t>(k);
    sig[1] = static_cast<std::uint32_t>(round);
    std::copy_n(colors.begin() + static_cast<std::ptrdiff_t>(m * per_node), per_node, sig.begin() + 2);
    std::sort(sig.begin() + 2, sig.end());
    out[m] = pool.intern(sig);
  }
  return out;
}

std::size_t distinct_count(std::span<const std::vector<Color>> tables) {
  std::vector<Color> all;
  for (const auto& t : tables) all.insert(all.end(), t.begin(), t.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

std::size_t distinct_count(std::span<const Color> t) {
  std::vector<Color> all(t.begin(), t.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

std::vector<RefinementResult> run_refinement(std::span<const Graph> graphs, std::vector<std::vector<Color>> colors,
                                             const RefinementConfig& config, ColorSession& session) {
  auto& impl = session.impl();
  const int k = config.order();
  if (config.rounds && *config.rounds < 0) throw std::invalid_argument("round budget must be non-negative");
  if (is_tuple_method(config.method) && config.k < 2) {
    throw std::invalid_argument("tuple methods require k >= 2");
  }

  std::vector<RefinementResult> results(graphs.size());
  std::size_t max_tuples = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    auto& r = results[gi];
    r.method = config.method;
    r.k = k;
    r.n = graphs[gi].size();
    r.per_round_histograms.push_back(histogram_of(colors[gi]));
    r.per_round_class_counts.push_back(distinct_count(colors[gi]));
    max_tuples = std::max(max_tuples, colors[gi].size());
  }

  const std::size_t hard_cap = max_tuples + 1;
  const std::size_t budget = config.rounds ? static_cast<std::size_t>(*config.rounds) : hard_cap;
  std::size_t joint_classes = distinct_count(colors);
  int round = 0;
  std::optional<int> first_stable;
  std::vector<double> round_ms;
  for (std::size_t step = 0; step < budget; ++step) {
    const auto started = std::chrono::steady_clock::now();
    auto& interner = impl.round(static_cast<std::size_t>(round) + 1);
    std::vector<std::vector<Color>> next(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const auto& g = graphs[gi];
      switch (config.method) {
        case Method::wl1: next[gi] = step_wl1(g, colors[gi], interner); break;
        case Method::wl1e: next[gi] = step_wl1e(g, colors[gi], interner); break;
        case Method::kwl: next[gi] = step_kwl(g, k, colors[gi], interner); break;
        case Method::kfwl: next[gi] = step_kfwl(g, k, colors[gi], interner); break;
        case Method::kewl: {
          const auto edges = edge_colors(g, k, colors[gi], session, round);
          next[gi] = step_kewl(g, k, colors[gi], edges, interner);
          break;
        }
      }
    }
    // New colors encode the old ones, so the partition refined iff the
    // number of classes grew.
    const std::size_t next_classes = distinct_count(next);
    round_ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count());
    if (next_classes == joint_classes) {
      if (!first_stable) first_stable = round;
      if (config.stop_when_stable) break;
    }
    joint_classes = next_classes;
    colors = std::move(next);
    ++round;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      results[gi].per_round_histograms.push_back(histogram_of(colors[gi]));
      results[gi].per_round_class_counts.push_back(distinct_count(colors[gi]));
    }
  }

  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    auto& r = results[gi];
    r.stable_round = first_stable;
    r.round_ms = round_ms;
    r.final.round = round;
    if (is_tuple_method(config.method)) {
      r.node_colors = pooled_node_colors(graphs[gi], k, round, colors[gi], impl.node_pool);
    } else {
      r.node_colors = colors[gi];
    }
    r.final.colors = std::move(colors[gi]);
  }
  return results;
}

}  // namespace

ColorTable init_tuple_colors(const Graph& g, int k, ColorSession& session) {
  const std::size_t count = checked_tuple_count(g, k, std::numeric_limits<std::size_t>::max());
  const std::size_t n = g.size();
  const TupleIndexer ix(n, k);
  const auto ku = static_cast<std::size_t>(k);
  const std::size_t pairs = ku * (ku - 1) / 2;
  const std::size_t stride = 1 + 2 * ku + pairs;
  ColorTable table;
  table.colors = compute_round(count, stride, session.impl().init, [&](std::size_t idx, std::span<std::uint32_t> sig) {
    std::size_t v[kMaxOrder];
    for (int j = 0; j < k; ++j) v[j] = ix.digit(idx, j);
    std::size_t p = 0;
    sig[p++] = static_cast<std::uint32_t>(k);
    for (std::size_t j = 0; j < ku; ++j) {
      const auto label = static_cast<std::uint64_t>(g.labels[v[j]]);
      sig[p++] = static_cast<std::uint32_t>(label >> 32);
      sig[p++] = static_cast<std::uint32_t>(label);
    }
    for (std::size_t a = 0; a < ku; ++a) {
      for (std::size_t b = a + 1; b < ku; ++b) sig[p++] = g.distances(v[a], v[b]);
    }
  });
  return table;
}

std::vector<Color> edge_colors(const Graph& g, int k, std::span<const Color> tuple_colors, ColorSession& session,
                               int round) {
  const std::size_t n = g.size();
  const auto ku = static_cast<std::size_t>(k);
  const TupleIndexer ix(n, k);
  const std::size_t rest = ipow(n, k - 2);
  const std::size_t pairs = ku * (ku - 1) / 2;
  const std::size_t stride = 1 + pairs * rest;
  return compute_round(n * n, stride, session.impl().edges(static_cast<std::size_t>(round)),
                       [&](std::size_t e, std::span<std::uint32_t> sig) {
                         const std::size_t i = e / n;
                         const std::size_t j = e % n;
                         sig[0] = g.distances(i, j);
                         auto* out = sig.data() + 1;
                         for (int u = 0; u < k; ++u) {
                           for (int v = u + 1; v < k; ++v) {
                             auto* block = out;
                             for (std::size_t r = 0; r < rest; ++r) {
                               // Spread r's digits over the positions other than u and v.
                               std::size_t idx = i * ix.place[static_cast<std::size_t>(u)] +
                                                 j * ix.place[static_cast<std::size_t>(v)];
                               std::size_t rem = r;
                               for (int p = k - 1; p >= 0; --p) {
                                 if (p == u || p == v) continue;
                                 idx += (rem % n) * ix.place[static_cast<std::size_t>(p)];
                                 rem /= n;
                               }
                               *out++ = tuple_colors[idx];
                             }
                             std::sort(block, out);
                           }
                         }
                       });
}

std::vector<RefinementResult> refine_joint(std::span<const Graph> graphs, const RefinementConfig& config,
                                           ColorSession& session) {
  const int k = config.order();
  std::vector<std::vector<Color>> colors;
  colors.reserve(graphs.size());
  for (const auto& g : graphs) {
    if (is_tuple_method(config.method) && config.k < 2) throw std::invalid_argument("tuple methods require k >= 2");
    checked_tuple_count(g, k, config.max_tuples);
    colors.push_back(init_tuple_colors(g, k, session).colors);
  }
  return run_refinement(graphs, std::move(colors), config, session);
}

std::vector<RefinementResult> refine_joint(std::span<const Graph> graphs, const RefinementConfig& config) {
  ColorSession session;
  return refine_joint(graphs, config, session);
}

std::vector<RefinementResult> refine_joint_from(std::span<const Graph> graphs,
                                                std::span<const std::vector<Color>> initial,
                                                const RefinementConfig& config, ColorSession& session) {
  if (is_tuple_method(config.method)) throw std::invalid_argument("initial node colors need a node method");
  if (initial.size() != graphs.size()) throw std::invalid_argument("one initial coloring per graph required");
  std::vector<std::vector<Color>> colors;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    if (initial[gi].size() != graphs[gi].size()) throw std::invalid_argument("initial coloring must be total");
    std::vector<Color> c(initial[gi].size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::uint32_t sig[2] = {kExternalInit, initial[gi][i]};
      c[i] = session.impl().init.intern(sig);
    }
    colors.push_back(std::move(c));
  }
  return run_refinement(graphs, std::move(colors), config, session);
}

RefinementResult refine(const Graph& g, const RefinementConfig& config) {
  return std::move(refine_joint(std::span<const Graph>(&g, 1), config).front());
}

namespace {
RefinementResult refine_as(const Graph& g, RefinementConfig config, Method m) {
  config.method = m;
  return refine(g, config);
}
}  // namespace

RefinementResult refine_wl1(const Graph& g, RefinementConfig config) { return refine_as(g, config, Method::wl1); }
RefinementResult refine_wl1e(const Graph& g, RefinementConfig config) { return refine_as(g, config, Method::wl1e); }
RefinementResult refine_kwl(const Graph& g, RefinementConfig config) { return refine_as(g, config, Method::kwl); }
RefinementResult refine_kfwl(const Graph& g, RefinementConfig config) { return refine_as(g, config, Method::kfwl); }
RefinementResult refine_kewl(const Graph& g, RefinementConfig config) { return refine_as(g, config, Method::kewl); }

Verdict distinguish(const PointCloud& a, const PointCloud& b, const RefinementConfig& config) {
  const PointCloud clouds[2] = {a, b};
  const auto graphs = make_graphs(clouds, config.tol);
  const auto results = refine_joint(graphs, config);
  Verdict v;
  v.method = config.method;
  v.k = config.order();
  v.rounds = config.rounds;
  const auto& ha = results[0].per_round_histograms;
  const auto& hb = results[1].per_round_histograms;
  v.rounds_computed = static_cast<int>(ha.size()) - 1;
  for (std::size_t t = 0; t < ha.size(); ++t) {
    if (ha[t] != hb[t]) {
      v.distinguished = true;
      v.separation_round = static_cast<int>(t);
      break;
    }
  }
  return v;
}

}  // namespace diswl
