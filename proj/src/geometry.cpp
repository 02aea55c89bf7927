#include "diswl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Geometry>

#include "diswl/random.hpp"

namespace diswl {

PointCloud::PointCloud(std::vector<Vec3> coords, std::vector<std::int64_t> labels)
    : coords_(std::move(coords)), labels_(std::move(labels)) {
  if (coords_.empty()) throw std::invalid_argument("point cloud must contain at least one point");
  if (labels_.size() != coords_.size()) {
    throw std::invalid_argument("label count " + std::to_string(labels_.size()) +
                                " does not match point count " + std::to_string(coords_.size()));
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!coords_[i].allFinite()) {
      throw std::invalid_argument("non-finite coordinate at point " + std::to_string(i));
    }
  }
  for (auto label : labels_) {
    if (label < 0) throw std::invalid_argument("labels must be non-negative");
  }
}

PointCloud PointCloud::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Vec3> coords(size());
  std::vector<std::int64_t> labels(size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    coords[i] = coords_.at(perm[i]);
    labels[i] = labels_.at(perm[i]);
  }
  return {std::move(coords), std::move(labels)};
}

PointCloud build_point_cloud(std::vector<Vec3> coords, std::optional<std::vector<std::int64_t>> labels) {
  std::vector<std::int64_t> l = labels ? std::move(*labels) : std::vector<std::int64_t>(coords.size(), 0);
  return {std::move(coords), std::move(l)};
}

PointCloud apply_e3(const PointCloud& pc, const E3Transform& g) {
  if (!g.rotation.allFinite() ||
      ((g.rotation.transpose() * g.rotation) - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("rotation is not orthogonal");
  }
  if (!g.translation.allFinite()) throw std::invalid_argument("non-finite translation");
  std::vector<Vec3> coords;
  coords.reserve(pc.size());
  for (const auto& x : pc.coords()) coords.emplace_back(g.rotation * x + g.translation);
  return {std::move(coords), pc.labels()};
}

E3Transform random_e3(std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xe3));
  // Uniform unit quaternion.
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  const double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  Eigen::Quaterniond q(b * std::cos(two_pi * u3), a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                       b * std::sin(two_pi * u3));
  q.normalize();
  E3Transform g;
  g.rotation = q.toRotationMatrix();
  if (rng.uniform() < 0.5) g.rotation.col(0) = -g.rotation.col(0);
  for (int i = 0; i < 3; ++i) g.translation[i] = rng.uniform(-10.0, 10.0);
  return g;
}

std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x9e));
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

DistanceMatrix distance_matrix(const PointCloud& pc) {
  const auto n = static_cast<Eigen::Index>(pc.size());
  DistanceMatrix d = DistanceMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (pc[i] - pc[j]).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

PointCloud center_coordinates(const PointCloud& pc) {
  Vec3 centroid = Vec3::Zero();
  for (const auto& x : pc.coords()) centroid += x;
  centroid /= static_cast<double>(pc.size());
  std::vector<Vec3> coords;
  coords.reserve(pc.size());
  for (const auto& x : pc.coords()) coords.emplace_back(x - centroid);
  return {std::move(coords), pc.labels()};
}

std::vector<QuantizedDistanceMatrix> canonicalize_distances(std::span<const DistanceMatrix> matrices,
                                                            double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::vector<double> values;
  for (const auto& m : matrices) {
    if (m.rows() != m.cols()) throw std::invalid_argument("distance matrix must be square");
    values.insert(values.end(), m.data(), m.data() + m.size());
    values.push_back(0.0);  // keeps class 0 the zero class even for empty input
  }
  std::sort(values.begin(), values.end());

  // Cluster boundaries: lower[c] is the smallest member of class c.
  std::vector<double> lower;
  std::vector<double> representative;
  double cluster_lo = values.empty() ? 0.0 : values.front();
  double prev = cluster_lo;
  auto close_cluster = [&](double hi) {
    if (hi - cluster_lo > 2.0 * tol) {
      throw std::domain_error("distance values chain over more than twice the tolerance; lower tol");
    }
    lower.push_back(cluster_lo);
    representative.push_back(0.5 * (cluster_lo + hi));
  };
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - prev > tol) {
      close_cluster(prev);
      cluster_lo = values[i];
    }
    prev = values[i];
  }
  if (!values.empty()) close_cluster(prev);

  std::vector<QuantizedDistanceMatrix> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) {
    QuantizedDistanceMatrix q;
    q.source_n = static_cast<std::size_t>(m.rows());
    q.representative = representative;
    q.classes.resize(q.source_n * q.source_n);
    for (std::size_t i = 0; i < q.source_n; ++i) {
      for (std::size_t j = 0; j < q.source_n; ++j) {
        const double v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        auto it = std::upper_bound(lower.begin(), lower.end(), v);
        q.classes[i * q.source_n + j] = static_cast<std::uint32_t>(std::distance(lower.begin(), it) - 1);
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

namespace {

/// Orders nodes so that the first few span as many affine dimensions as
/// possible; once four independent nodes are fixed, every later node has at
/// most one admissible image.
std::vector<std::size_t> search_order(const PointCloud& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  order.push_back(0);
  used[0] = true;
  std::vector<Vec3> basis;
  const double eps = 1e-9;
  for (int dim = 0; dim < 3 && order.size() < n; ++dim) {
    double best = eps;
    std::size_t best_idx = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      Vec3 r = a[i] - a[0];
      for (const auto& e : basis) r -= r.dot(e) * e;
      if (r.norm() > best) {
        best = r.norm();
        best_idx = i;
      }
    }
    if (best_idx == n) break;
    Vec3 r = a[best_idx] - a[0];
    for (const auto& e : basis) r -= r.dot(e) * e;
    basis.push_back(r.normalized());
    order.push_back(best_idx);
    used[best_idx] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i]) order.push_back(i);
  }
  return order;
}

struct CongruenceSearch {
  const DistanceMatrix& da;
  const DistanceMatrix& db;
  const std::vector<std::vector<bool>>& compatible;
  const std::vector<std::size_t>& order;
  double tol;
  std::vector<std::size_t> image;  // image[a-node] = b-node
  std::vector<bool> taken;

  bool run(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::size_t i = order[depth];
    for (std::size_t c = 0; c < taken.size(); ++c) {
      if (taken[c] || !compatible[i][c]) continue;
      bool ok = std::abs(da(i, i) - db(c, c)) <= tol;
      for (std::size_t d = 0; ok && d < depth; ++d) {
        const std::size_t j = order[d];
        ok = std::abs(da(i, j) - db(c, image[j])) <= tol;
      }
      if (!ok) continue;
      image[i] = c;
      taken[c] = true;
      if (run(depth + 1)) return true;
      taken[c] = false;
    }
    return false;
  }
};

std::vector<std::pair<std::int64_t, double>> profile(const PointCloud& pc, const DistanceMatrix& d,
                                                     std::size_t i) {
  std::vector<std::pair<std::int64_t, double>> p;
  p.reserve(pc.size());
  for (std::size_t j = 0; j < pc.size(); ++j) {
    if (j != i) p.emplace_back(pc.labels()[j], d(i, j));
  }
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

CongruenceVerdict congruent_bruteforce(const PointCloud& a, const PointCloud& b, double tol) {
  CongruenceVerdict verdict;
  verdict.max_residual = std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n != b.size()) return verdict;
  {
    auto la = a.labels();
    auto lb = b.labels();
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb) return verdict;
  }
  const DistanceMatrix da = distance_matrix(a);
  const DistanceMatrix db = distance_matrix(b);

  std::vector<std::vector<std::pair<std::int64_t, double>>> pa(n), pb(n);
  for (std::size_t i = 0; i < n; ++i) {
    pa[i] = profile(a, da, i);
    pb[i] = profile(b, db, i);
  }
  std::vector<std::vector<bool>> compatible(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      if (a.labels()[i] != b.labels()[c]) continue;
      bool ok = true;
      for (std::size_t t = 0; ok && t < pa[i].size(); ++t) {
        ok = pa[i][t].first == pb[c][t].first && std::abs(pa[i][t].second - pb[c][t].second) <= tol;
      }
      compatible[i][c] = ok;
    }
  }

  const auto order = search_order(a);
  CongruenceSearch search{da, db, compatible, order, tol, std::vector<std::size_t>(n, 0),
                          std::vector<bool>(n, false)};
  if (!search.run(0)) return verdict;

  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      residual = std::max(residual, std::abs(da(i, j) - db(search.image[i], search.image[j])));
    }
  }
  verdict.congruent = true;
  verdict.witness_permutation = std::move(search.image);
  verdict.max_residual = residual;
  return verdict;
}

}  // namespace diswl
