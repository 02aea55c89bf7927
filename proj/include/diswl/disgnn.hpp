#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "diswl/geometry.hpp"

namespace diswl {

enum class Variant { plain, f, e };
enum class Activation { silu, tanh };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);
std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

struct ModelConfig {
  Variant variant = Variant::f;
  int k = 2;
  int rounds = 3;
  int hidden_dim = 32;      ///< K
  int rbf_dim = 16;         ///< H_e
  int label_embed_dim = 8;  ///< H_z
  std::uint64_t seed = 0;
  Activation activation = Activation::silu;
  double beta = 10.0;  ///< shared RBF width
  std::size_t max_tuples = 500'000;

  /// Throws std::invalid_argument on k < 2, rounds < 0 or a dimension < 1.
  void validate() const;
};

struct RbfParams {
  std::vector<double> betas;
  std::vector<double> mus;

  /// Common beta, mu_k = (k+1)/size.
  static RbfParams evenly_spaced(int size, double beta);
};

/// f[k] = exp(-beta_k (exp(-d) - mu_k)^2).
Eigen::VectorXd rbf_expand(double d, const RbfParams& p);

/// x -> W2 act(W1 x + b1) + b2.
struct Mlp {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;

  int in_dim() const { return static_cast<int>(w1.cols()); }
  int out_dim() const { return static_cast<int>(w2.rows()); }
};

Eigen::VectorXd apply(const Mlp& m, const Eigen::VectorXd& x, Activation act);

/// Weights of one message passing round.
struct RoundWeights {
  /// Elementwise maps summed over each neighbor multiset: one per position
  /// for plain / e (input K, or 2K with the edge state), a single one over
  /// the concatenated ordered neighbor vector for f (input kK).
  std::vector<Mlp> neighbor;
  /// Combines h_v with the pooled neighbor messages.
  Mlp update;
  /// e only: elementwise maps for each position pair u < v, and the edge map
  /// over (rbf(d_ij), pooled tuples).
  std::vector<Mlp> edge_pool;
  Mlp edge;
};

struct WeightSet {
  ModelConfig config;
  RbfParams rbf;
  std::vector<Mlp> label_maps;                  ///< f_z^i, one per position
  std::vector<Mlp> distance_maps;               ///< f_e^{ij}, pairs i < j in lexicographic order
  std::vector<Eigen::VectorXd> pattern_embeddings;  ///< per equality pattern
  std::vector<std::uint64_t> pattern_codes;         ///< sorted, parallel to pattern_embeddings
  std::vector<RoundWeights> rounds;
  Mlp pool_diagonal;
  Mlp pool_rest;
  Mlp out;
  Mlp node;
  Mlp equivariant;

  /// f_z^emb; any non-negative label, deterministic in (seed, label).
  Eigen::VectorXd label_embedding(std::int64_t label) const;
  /// Index of a tuple's equality pattern (first-occurrence numbering).
  std::size_t pattern_index(std::span<const std::size_t> tuple) const;
};

/// Seeded uniform weights in [-a, a], a = fan_in^(-1/2).
WeightSet make_weights(const ModelConfig& config);

/// K x n^k; column of tuple (v_1..v_k) is sum v_i n^(k-i).
using TupleReps = Eigen::MatrixXd;

/// Hadamard product of pattern, label and distance parts, then each feature
/// standardized over the cloud's tuples.
TupleReps init_reps(const PointCloud& pc, const WeightSet& w);
TupleReps step_plain(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t);
TupleReps step_f(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t);
TupleReps step_e(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t);

/// Edge representations e_ij^t as a K x n^2 matrix (column i n + j).
Eigen::MatrixXd edge_states(const TupleReps& h, const PointCloud& pc, const WeightSet& w, int t);

/// Pools diagonal tuples and the rest separately, then maps to a scalar.
double readout_scalar(const TupleReps& h, std::size_t n, const WeightSet& w);

/// h_m pools the tuples whose first entry is m. K x n.
Eigen::MatrixXd node_reps(const TupleReps& h, std::size_t n, const WeightSet& w);

/// sum_m MLP(h_m) (x_m - centroid).
Vec3 equivariant_head(const PointCloud& pc, const Eigen::MatrixXd& nodes, const WeightSet& w);

struct ModelOutput {
  TupleReps tuple_reps;
  double scalar = 0.0;
  Eigen::MatrixXd node_reps;
  Vec3 equivariant = Vec3::Zero();
};

ModelOutput forward(const PointCloud& pc, const WeightSet& w);
ModelOutput forward(const PointCloud& pc, const ModelConfig& config);

}  // namespace diswl
