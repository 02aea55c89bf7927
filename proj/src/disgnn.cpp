#include "diswl/disgnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "diswl/parallel.hpp"
#include "diswl/random.hpp"
#include "diswl/wl_engine.hpp"

namespace diswl {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::f: return "f";
    case Variant::e: return "e";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (auto v : {Variant::plain, Variant::f, Variant::e}) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string_view to_string(Activation a) { return a == Activation::silu ? "silu" : "tanh"; }

Activation parse_activation(std::string_view name) {
  if (name == "silu") return Activation::silu;
  if (name == "tanh") return Activation::tanh;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

void ModelConfig::validate() const {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  if (hidden_dim < 1 || rbf_dim < 1 || label_embed_dim < 1) {
    throw std::invalid_argument("model dimensions must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
}

RbfParams RbfParams::evenly_spaced(int size, double beta) {
  RbfParams p;
  for (int i = 0; i < size; ++i) {
    p.betas.push_back(beta);
    p.mus.push_back(static_cast<double>(i + 1) / size);
  }
  return p;
}

Eigen::VectorXd rbf_expand(double d, const RbfParams& p) {
  if (p.betas.size() != p.mus.size()) throw std::invalid_argument("rbf parameter lengths differ");
  const double x = std::exp(-d);
  Eigen::VectorXd out(static_cast<Eigen::Index>(p.mus.size()));
  for (std::size_t i = 0; i < p.mus.size(); ++i) {
    const double u = x - p.mus[i];
    out[static_cast<Eigen::Index>(i)] = std::exp(-p.betas[i] * u * u);
  }
  return out;
}

namespace {

double activate(double x, Activation act) {
  return act == Activation::silu ? x / (1.0 + std::exp(-x)) : std::tanh(x);
}

template <typename Derived>
void activate_inplace(Eigen::MatrixBase<Derived>& m, Activation act) {
  m = m.unaryExpr([act](double x) { return activate(x, act); });
}

/// act(W1 X + b1) for every column of X.
Eigen::MatrixXd hidden(const Mlp& m, const Eigen::MatrixXd& x, Activation act) {
  Eigen::MatrixXd z = m.w1 * x;
  z.colwise() += m.b1;
  activate_inplace(z, act);
  return z;
}

/// Second layer after pooling `count` hidden vectors.
Eigen::MatrixXd finish(const Mlp& m, const Eigen::MatrixXd& pooled, double count) {
  Eigen::MatrixXd out = m.w2 * pooled;
  out.colwise() += count * m.b2;
  return out;
}

/// Each feature centered and scaled to unit variance over the cloud's tuples.
/// Depends only on the multiset of columns, so it stays invariant.
void standardize_features(Eigen::MatrixXd& h) {
  constexpr double kVarianceFloor = 1e-6;
  const auto count = static_cast<double>(h.cols());
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    const double mean = h.row(r).sum() / count;
    h.row(r).array() -= mean;
    const double var = h.row(r).squaredNorm() / count;
    h.row(r) /= std::sqrt(var + kVarianceFloor);
  }
}

Eigen::MatrixXd apply_columns(const Mlp& m, const Eigen::MatrixXd& x, Activation act) {
  return finish(m, hidden(m, x, act), 1.0);
}

Mlp make_mlp(Rng& rng, int in, int width, int out) {
  auto fill = [&](Eigen::Index rows, Eigen::Index cols, int fan_in) {
    const double a = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Eigen::MatrixXd w(rows, cols);
    // Row-major draw order, independent of Eigen's storage order.
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) w(r, c) = rng.uniform(-a, a);
    return w;
  };
  Mlp m;
  m.w1 = fill(width, in, in);
  m.b1 = fill(width, 1, in).col(0);
  m.w2 = fill(out, width, width);
  m.b2 = fill(out, 1, width).col(0);
  return m;
}

Eigen::VectorXd uniform_vector(Rng& rng, int size) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

/// First-occurrence numbering of a tuple, packed base k.
std::uint64_t pattern_code(std::span<const std::size_t> tuple) {
  std::vector<std::size_t> seen;
  std::uint64_t code = 0;
  const auto k = static_cast<std::uint64_t>(tuple.size());
  for (auto v : tuple) {
    const auto it = std::find(seen.begin(), seen.end(), v);
    const auto id = static_cast<std::uint64_t>(it - seen.begin());
    if (it == seen.end()) seen.push_back(v);
    code = code * k + id;
  }
  return code;
}

void enumerate_patterns(int k, std::vector<std::size_t>& prefix, std::size_t next, std::vector<std::uint64_t>& out) {
  if (static_cast<int>(prefix.size()) == k) {
    out.push_back(pattern_code(prefix));
    return;
  }
  for (std::size_t v = 0; v <= next && v < static_cast<std::size_t>(k); ++v) {
    prefix.push_back(v);
    enumerate_patterns(k, prefix, std::max(next, v + 1), out);
    prefix.pop_back();
  }
}

enum Stream : std::uint64_t { kInitStream = 1, kReadoutStream = 2, kLabelStream = 3, kRoundStream = 100 };

struct Layout {
  std::size_t n;
  int k;
  std::size_t tuples;
  std::vector<std::size_t> place;

  Layout(std::size_t n_, int k_, std::size_t max_tuples) : n(n_), k(k_), tuples(1), place(static_cast<std::size_t>(k_)) {
    for (int j = k - 1; j >= 0; --j) {
      place[static_cast<std::size_t>(j)] = tuples;
      if (tuples > max_tuples / n) {
        throw TupleLimitExceeded("n^k exceeds the model tuple limit of " + std::to_string(max_tuples));
      }
      tuples *= n;
    }
  }
  std::size_t digit(std::size_t idx, int j) const { return idx / place[static_cast<std::size_t>(j)] % n; }
  std::size_t replace(std::size_t idx, int j, std::size_t w) const {
    return idx + (w - digit(idx, j)) * place[static_cast<std::size_t>(j)];
  }
  std::size_t diagonal(std::size_t m) const {
    std::size_t s = 0;
    for (auto p : place) s += p;
    return m * s;
  }
};

std::vector<std::pair<int, int>> position_pairs(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  return pairs;
}

void check_reps(const TupleReps& h, const Layout& layout, const WeightSet& w) {
  if (h.rows() != w.config.hidden_dim || static_cast<std::size_t>(h.cols()) != layout.tuples) {
    throw std::invalid_argument("tuple representations do not match the model and cloud");
  }
}

void check_round(const WeightSet& w, int t, Variant expected) {
  if (w.config.variant != expected) throw std::invalid_argument("step does not match the model variant");
  if (t < 0 || t >= static_cast<int>(w.rounds.size())) throw std::out_of_range("round index out of range");
}

/// update([h; pooled_1; ...]).
TupleReps combine(const TupleReps& h, const std::vector<Eigen::MatrixXd>& pooled, const Mlp& update,
                  Activation act) {
  Eigen::Index rows = h.rows();
  for (const auto& p : pooled) rows += p.rows();
  Eigen::MatrixXd x(rows, h.cols());
  x.topRows(h.rows()) = h;
  Eigen::Index at = h.rows();
  for (const auto& p : pooled) {
    x.middleRows(at, p.rows()) = p;
    at += p.rows();
  }
  return h + apply_columns(update, x, act);
}

}  // namespace

Eigen::VectorXd apply(const Mlp& m, const Eigen::VectorXd& x, Activation act) {
  Eigen::VectorXd z = m.w1 * x + m.b1;
  activate_inplace(z, act);
  return m.w2 * z + m.b2;
}

Eigen::VectorXd WeightSet::label_embedding(std::int64_t label) const {
  if (label < 0) throw std::invalid_argument("labels must be non-negative");
  Rng rng(mix_seed(mix_seed(config.seed, kLabelStream), static_cast<std::uint64_t>(label)));
  return uniform_vector(rng, config.label_embed_dim);
}

std::size_t WeightSet::pattern_index(std::span<const std::size_t> tuple) const {
  const auto code = pattern_code(tuple);
  const auto it = std::lower_bound(pattern_codes.begin(), pattern_codes.end(), code);
  if (it == pattern_codes.end() || *it != code) throw std::invalid_argument("tuple length does not match the model");
  return static_cast<std::size_t>(it - pattern_codes.begin());
}

WeightSet make_weights(const ModelConfig& config) {
  config.validate();
  WeightSet w;
  w.config = config;
  w.rbf = RbfParams::evenly_spaced(config.rbf_dim, config.beta);
  const int K = config.hidden_dim;
  const int k = config.k;

  // Separate streams keep the init and readout weights identical across
  // variants and round counts for one seed.
  Rng init(mix_seed(config.seed, kInitStream));
  for (int i = 0; i < k; ++i) w.label_maps.push_back(make_mlp(init, config.label_embed_dim, K, K));
  for (std::size_t p = 0; p < position_pairs(k).size(); ++p) {
    w.distance_maps.push_back(make_mlp(init, config.rbf_dim, K, K));
  }
  std::vector<std::size_t> prefix;
  enumerate_patterns(k, prefix, 0, w.pattern_codes);
  std::sort(w.pattern_codes.begin(), w.pattern_codes.end());
  for (std::size_t i = 0; i < w.pattern_codes.size(); ++i) w.pattern_embeddings.push_back(uniform_vector(init, K));

  Rng readout(mix_seed(config.seed, kReadoutStream));
  w.pool_diagonal = make_mlp(readout, K, K, K);
  w.pool_rest = make_mlp(readout, K, K, K);
  w.out = make_mlp(readout, 2 * K, K, 1);
  w.node = make_mlp(readout, K, K, K);
  w.equivariant = make_mlp(readout, K, K, 1);

  for (int t = 0; t < config.rounds; ++t) {
    Rng rng(mix_seed(config.seed, kRoundStream + static_cast<std::uint64_t>(t)));
    RoundWeights r;
    switch (config.variant) {
      case Variant::plain:
        for (int j = 0; j < k; ++j) r.neighbor.push_back(make_mlp(rng, K, K, K));
        r.update = make_mlp(rng, (k + 1) * K, K, K);
        break;
      case Variant::f:
        r.neighbor.push_back(make_mlp(rng, k * K, K, K));
        r.update = make_mlp(rng, 2 * K, K, K);
        break;
      case Variant::e: {
        for (int j = 0; j < k; ++j) r.neighbor.push_back(make_mlp(rng, 2 * K, K, K));
        r.update = make_mlp(rng, (k + 1) * K, K, K);
        const auto pairs = static_cast<int>(position_pairs(k).size());
        for (int q = 0; q < pairs; ++q) r.edge_pool.push_back(make_mlp(rng, K, K, K));
        r.edge = make_mlp(rng, config.rbf_dim + pairs * K, K, K);
        break;
      }
    }
    w.rounds.push_back(std::move(r));
  }
  return w;
}

TupleReps init_reps(const PointCloud& pc, const WeightSet& w) {
  const auto& cfg = w.config;
  const std::size_t n = pc.size();
  const Layout layout(n, cfg.k, cfg.max_tuples);
  const auto d = distance_matrix(pc);
  const auto act = cfg.activation;
  const auto K = cfg.hidden_dim;

  // f_z^i(emb(z)) per position and node.
  std::vector<Eigen::MatrixXd> label_part;
  Eigen::MatrixXd emb(cfg.label_embed_dim, static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) emb.col(static_cast<Eigen::Index>(v)) = w.label_embedding(pc.labels()[v]);
  for (const auto& m : w.label_maps) label_part.push_back(apply_columns(m, emb, act));

  // f_e^{ij}(rbf(d_ab)) per position pair and node pair.
  Eigen::MatrixXd rbf(cfg.rbf_dim, static_cast<Eigen::Index>(n * n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      rbf.col(static_cast<Eigen::Index>(a * n + b)) =
          rbf_expand(d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), w.rbf);
  std::vector<Eigen::MatrixXd> pair_part;
  for (const auto& m : w.distance_maps) pair_part.push_back(apply_columns(m, rbf, act));

  const auto pairs = position_pairs(cfg.k);
  TupleReps h(K, static_cast<Eigen::Index>(layout.tuples));
  parallel_for(layout.tuples, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> tuple(static_cast<std::size_t>(cfg.k));
    for (std::size_t idx = begin; idx < end; ++idx) {
      for (int j = 0; j < cfg.k; ++j) tuple[static_cast<std::size_t>(j)] = layout.digit(idx, j);
      Eigen::VectorXd x = w.pattern_embeddings[w.pattern_index(tuple)];
      for (int j = 0; j < cfg.k; ++j) {
        x.array() *= label_part[static_cast<std::size_t>(j)].col(static_cast<Eigen::Index>(tuple[static_cast<std::size_t>(j)])).array();
      }
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        const auto a = tuple[static_cast<std::size_t>(pairs[q].first)];
        const auto b = tuple[static_cast<std::size_t>(pairs[q].second)];
        x.array() *= pair_part[q].col(static_cast<Eigen::Index>(a * n + b)).array();
      }
      // RMS normalization: the product of several O(0.1) factors is tiny.
      const double rms = x.norm() / std::sqrt(static_cast<double>(K));
      if (rms > 0.0) x /= rms;
      h.col(static_cast<Eigen::Index>(idx)) = x;
    }
  });
  // Wide clouds push exp(-d) toward 0 where the RBF barely varies; without
  // this the tuples start nearly identical.
  standardize_features(h);
  return h;
}

TupleReps step_plain(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t) {
  check_round(w, t, Variant::plain);
  const auto& cfg = w.config;
  const std::size_t n = pc.size();
  const Layout layout(n, cfg.k, cfg.max_tuples);
  check_reps(h, layout, w);
  const auto& r = w.rounds[static_cast<std::size_t>(t)];

  std::vector<Eigen::MatrixXd> pooled;
  for (int j = 0; j < cfg.k; ++j) {
    const auto& m = r.neighbor[static_cast<std::size_t>(j)];
    const Eigen::MatrixXd g = hidden(m, h, cfg.activation);
    Eigen::MatrixXd s(g.rows(), g.cols());
    parallel_for(layout.tuples, [&](std::size_t begin, std::size_t end) {
      for (std::size_t idx = begin; idx < end; ++idx) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(g.rows());
        for (std::size_t x = 0; x < n; ++x) acc += g.col(static_cast<Eigen::Index>(layout.replace(idx, j, x)));
        s.col(static_cast<Eigen::Index>(idx)) = acc;
      }
    });
    pooled.push_back(finish(m, s, static_cast<double>(n)));
  }
  return combine(h, pooled, r.update, cfg.activation);
}

TupleReps step_f(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t) {
  check_round(w, t, Variant::f);
  const auto& cfg = w.config;
  const std::size_t n = pc.size();
  const Layout layout(n, cfg.k, cfg.max_tuples);
  check_reps(h, layout, w);
  const auto& r = w.rounds[static_cast<std::size_t>(t)];
  const auto& m = r.neighbor.front();
  const auto K = cfg.hidden_dim;

  // The first layer is linear in the concatenated neighbor vector, so each
  // position's block is applied once per tuple up front.
  std::vector<Eigen::MatrixXd> part;
  for (int j = 0; j < cfg.k; ++j) part.push_back(m.w1.middleCols(j * K, K) * h);

  Eigen::MatrixXd s(m.w1.rows(), h.cols());
  const auto act = cfg.activation;
  parallel_for(layout.tuples, [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd z(m.w1.rows());
    for (std::size_t idx = begin; idx < end; ++idx) {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(m.w1.rows());
      for (std::size_t x = 0; x < n; ++x) {
        z = m.b1;
        for (int j = 0; j < cfg.k; ++j) {
          z += part[static_cast<std::size_t>(j)].col(static_cast<Eigen::Index>(layout.replace(idx, j, x)));
        }
        activate_inplace(z, act);
        acc += z;
      }
      s.col(static_cast<Eigen::Index>(idx)) = acc;
    }
  });
  return combine(h, {finish(m, s, static_cast<double>(n))}, r.update, act);
}

Eigen::MatrixXd edge_states(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t) {
  check_round(w, t, Variant::e);
  const auto& cfg = w.config;
  const std::size_t n = pc.size();
  const Layout layout(n, cfg.k, cfg.max_tuples);
  check_reps(h, layout, w);
  const auto& r = w.rounds[static_cast<std::size_t>(t)];
  const auto pairs = position_pairs(cfg.k);
  const auto d = distance_matrix(pc);
  const double per_edge = static_cast<double>(layout.tuples / (n * n));

  const auto rows = static_cast<Eigen::Index>(cfg.rbf_dim) + static_cast<Eigen::Index>(pairs.size()) * cfg.hidden_dim;
  Eigen::MatrixXd x(rows, static_cast<Eigen::Index>(n * n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      x.col(static_cast<Eigen::Index>(a * n + b)).head(cfg.rbf_dim) =
          rbf_expand(d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), w.rbf);

  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto& m = r.edge_pool[q];
    const Eigen::MatrixXd g = hidden(m, h, cfg.activation);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(g.rows(), static_cast<Eigen::Index>(n * n));
    for (std::size_t idx = 0; idx < layout.tuples; ++idx) {
      const auto a = layout.digit(idx, pairs[q].first);
      const auto b = layout.digit(idx, pairs[q].second);
      s.col(static_cast<Eigen::Index>(a * n + b)) += g.col(static_cast<Eigen::Index>(idx));
    }
    x.middleRows(cfg.rbf_dim + static_cast<Eigen::Index>(q) * cfg.hidden_dim, cfg.hidden_dim) =
        finish(m, s, per_edge);
  }
  return apply_columns(r.edge, x, cfg.activation);
}

TupleReps step_e(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t) {
  const Eigen::MatrixXd edges = edge_states(h, pc, w, t);
  const auto& cfg = w.config;
  const std::size_t n = pc.size();
  const Layout layout(n, cfg.k, cfg.max_tuples);
  const auto& r = w.rounds[static_cast<std::size_t>(t)];
  const auto K = cfg.hidden_dim;
  const auto act = cfg.activation;

  std::vector<Eigen::MatrixXd> pooled;
  for (int j = 0; j < cfg.k; ++j) {
    const auto& m = r.neighbor[static_cast<std::size_t>(j)];
    const Eigen::MatrixXd ph = m.w1.leftCols(K) * h;
    const Eigen::MatrixXd pe = m.w1.rightCols(K) * edges;
    Eigen::MatrixXd s(m.w1.rows(), h.cols());
    parallel_for(layout.tuples, [&](std::size_t begin, std::size_t end) {
      Eigen::VectorXd z(m.w1.rows());
      for (std::size_t idx = begin; idx < end; ++idx) {
        const auto vj = layout.digit(idx, j);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(m.w1.rows());
        for (std::size_t x = 0; x < n; ++x) {
          // Neighbor differs from v only at position j: edge (v_j, x).
          z = m.b1 + ph.col(static_cast<Eigen::Index>(layout.replace(idx, j, x))) +
              pe.col(static_cast<Eigen::Index>(vj * n + x));
          activate_inplace(z, act);
          acc += z;
        }
        s.col(static_cast<Eigen::Index>(idx)) = acc;
      }
    });
    pooled.push_back(finish(m, s, static_cast<double>(n)));
  }
  return combine(h, pooled, r.update, act);
}

double readout_scalar(const TupleReps& h, std::size_t n, const WeightSet& w) {
  const auto& cfg = w.config;
  const Layout layout(n, cfg.k, std::numeric_limits<std::size_t>::max());
  check_reps(h, layout, w);
  const auto K = cfg.hidden_dim;

  const Eigen::MatrixXd gd = hidden(w.pool_diagonal, h, cfg.activation);
  const Eigen::MatrixXd gr = hidden(w.pool_rest, h, cfg.activation);
  Eigen::VectorXd sd = Eigen::VectorXd::Zero(gd.rows());
  Eigen::VectorXd sr = Eigen::VectorXd::Zero(gr.rows());
  std::size_t next_diag = 0;
  for (std::size_t idx = 0; idx < layout.tuples; ++idx) {
    if (next_diag < n && idx == layout.diagonal(next_diag)) {
      sd += gd.col(static_cast<Eigen::Index>(idx));
      ++next_diag;
    } else {
      sr += gr.col(static_cast<Eigen::Index>(idx));
    }
  }
  Eigen::VectorXd x(2 * K);
  x.head(K) = finish(w.pool_diagonal, sd, static_cast<double>(n)).col(0);
  x.tail(K) = finish(w.pool_rest, sr, static_cast<double>(layout.tuples - n)).col(0);
  return apply(w.out, x, cfg.activation)[0];
}

Eigen::MatrixXd node_reps(const TupleReps& h, std::size_t n, const WeightSet& w) {
  const auto& cfg = w.config;
  const Layout layout(n, cfg.k, std::numeric_limits<std::size_t>::max());
  check_reps(h, layout, w);
  const Eigen::MatrixXd g = hidden(w.node, h, cfg.activation);
  const std::size_t block = layout.place.front();
  Eigen::MatrixXd s(g.rows(), static_cast<Eigen::Index>(n));
  for (std::size_t m = 0; m < n; ++m) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(g.rows());
    for (std::size_t i = 0; i < block; ++i) acc += g.col(static_cast<Eigen::Index>(m * block + i));
    s.col(static_cast<Eigen::Index>(m)) = acc;
  }
  return finish(w.node, s, static_cast<double>(block));
}

Vec3 equivariant_head(const PointCloud& pc, const Eigen::MatrixXd& nodes, const WeightSet& w) {
  if (static_cast<std::size_t>(nodes.cols()) != pc.size()) {
    throw std::invalid_argument("node representations do not match the cloud");
  }
  const auto centered = center_coordinates(pc);
  const Eigen::MatrixXd weights = apply_columns(w.equivariant, nodes, w.config.activation);
  Vec3 out = Vec3::Zero();
  for (std::size_t m = 0; m < pc.size(); ++m) out += weights(0, static_cast<Eigen::Index>(m)) * centered[m];
  return out;
}

ModelOutput forward(const PointCloud& pc, const WeightSet& w) {
  ModelOutput out;
  out.tuple_reps = init_reps(pc, w);
  for (int t = 0; t < w.config.rounds; ++t) {
    switch (w.config.variant) {
      case Variant::plain: out.tuple_reps = step_plain(out.tuple_reps, pc, w, t); break;
      case Variant::f: out.tuple_reps = step_f(out.tuple_reps, pc, w, t); break;
      case Variant::e: out.tuple_reps = step_e(out.tuple_reps, pc, w, t); break;
    }
  }
  out.scalar = readout_scalar(out.tuple_reps, pc.size(), w);
  out.node_reps = node_reps(out.tuple_reps, pc.size(), w);
  out.equivariant = equivariant_head(pc, out.node_reps, w);
  return out;
}

ModelOutput forward(const PointCloud& pc, const ModelConfig& config) { return forward(pc, make_weights(config)); }

}  // namespace diswl
