#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace diswl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using DistanceMatrix = Eigen::MatrixXd;

/// Default absolute distance tolerance. Generated clouds sit at unit
/// circumradius, so an absolute bound is adequate.
inline constexpr double kDefaultTolerance = 1e-9;

/// Labeled 3D point cloud. Label 0 means "unlabeled".
class PointCloud {
 public:
  PointCloud() = default;

  /// Throws std::invalid_argument on empty input, a label/coordinate length
  /// mismatch or a non-finite coordinate.
  PointCloud(std::vector<Vec3> coords, std::vector<std::int64_t> labels);

  std::size_t size() const { return coords_.size(); }
  const std::vector<Vec3>& coords() const { return coords_; }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  const Vec3& operator[](std::size_t i) const { return coords_[i]; }

  /// Reorders nodes so that node i of the result is node perm[i] of this cloud.
  PointCloud permuted(std::span<const std::size_t> perm) const;

  bool operator==(const PointCloud&) const = default;

 private:
  std::vector<Vec3> coords_;
  std::vector<std::int64_t> labels_;
};

PointCloud build_point_cloud(std::vector<Vec3> coords,
                             std::optional<std::vector<std::int64_t>> labels = std::nullopt);

/// Element of E(3): x -> rotation * x + translation (rotation may be improper).
struct E3Transform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static E3Transform identity() { return {}; }
  static E3Transform translate(const Vec3& t) { return {Mat3::Identity(), t}; }
};

/// Throws std::invalid_argument if g.rotation is not orthogonal (1e-9).
PointCloud apply_e3(const PointCloud& pc, const E3Transform& g);

/// Uniformly random orthogonal matrix (det -1 with probability 1/2) and a
/// translation with entries in [-10, 10]. Deterministic in seed on every
/// platform.
E3Transform random_e3(std::uint64_t seed);

/// Random permutation of [0, n), deterministic in seed.
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);

DistanceMatrix distance_matrix(const PointCloud& pc);

PointCloud center_coordinates(const PointCloud& pc);

/// Distances mapped to class ids over a shared alphabet.
///
/// Class ids are dense, ordered by distance, and identical for equal
/// distances across every matrix canonicalized in the same call. Class 0 is
/// always the zero-distance class.
struct QuantizedDistanceMatrix {
  std::size_t source_n = 0;
  std::vector<std::uint32_t> classes;  // row-major source_n x source_n
  std::vector<double> representative;  // class id -> distance

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return classes[i * source_n + j]; }
  std::size_t num_classes() const { return representative.size(); }
};

/// Jointly quantizes all entries of all matrices: sorted values whose gap is at
/// most tol share a class. Representatives are cluster midpoints. Throws
/// std::invalid_argument for tol <= 0 and std::domain_error if a cluster spans
/// more than 2 * tol (no representative would be within tol of every member).
std::vector<QuantizedDistanceMatrix> canonicalize_distances(std::span<const DistanceMatrix> matrices,
                                                            double tol = kDefaultTolerance);

struct CongruenceVerdict {
  bool congruent = false;
  /// witness[i] = node of b matched to node i of a.
  std::optional<std::vector<std::size_t>> witness_permutation;
  /// Largest |D_a(i,j) - D_b(pi(i),pi(j))| of the witness; +inf without one.
  double max_residual = 0.0;
};

/// Permutation search over distance matrices (congruence iff the distance
/// graphs are isomorphic). Labels must match under the permutation.
CongruenceVerdict congruent_bruteforce(const PointCloud& a, const PointCloud& b,
                                       double tol = kDefaultTolerance);

}  // namespace diswl
