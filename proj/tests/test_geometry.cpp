#include <gtest/gtest.h>

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <numeric>

#include "diswl/counterexamples.hpp"
#include "diswl/geometry.hpp"
#include "helpers.hpp"

using namespace diswl;
using testing_helpers::random_cloud;
using testing_helpers::random_image;
using testing_helpers::to_oracle;

TEST(PointCloud, RejectsBadInput) {
  EXPECT_THROW(PointCloud({}, {}), std::invalid_argument);
  EXPECT_THROW(PointCloud({Vec3(0, 0, 0)}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(PointCloud({Vec3(0, std::nan(""), 0)}, {0}), std::invalid_argument);
  EXPECT_THROW(PointCloud({Vec3(0, 0, 0)}, {-1}), std::invalid_argument);
}

TEST(PointCloud, PermutedMovesLabelsWithPoints) {
  const PointCloud pc({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 2, 0)}, {3, 4, 5});
  const std::vector<std::size_t> perm{2, 0, 1};
  const auto q = pc.permuted(perm);
  EXPECT_EQ(q[0], pc[2]);
  EXPECT_EQ(q.labels(), (std::vector<std::int64_t>{5, 3, 4}));
}

TEST(E3, RandomTransformsAreOrthogonalAndMixHandedness) {
  int improper = 0;
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto g = random_e3(s);
    EXPECT_LT((g.rotation.transpose() * g.rotation - Mat3::Identity()).norm(), 1e-12);
    if (g.rotation.determinant() < 0) ++improper;
  }
  EXPECT_GT(improper, 10);
  EXPECT_LT(improper, 54);
}

TEST(E3, PreservesDistances) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pc = random_cloud(9, s);
    const auto moved = apply_e3(pc, random_e3(s + 100));
    EXPECT_LT((distance_matrix(pc) - distance_matrix(moved)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(E3, RejectsNonOrthogonal) {
  E3Transform g;
  g.rotation(0, 0) = 2.0;
  EXPECT_THROW(apply_e3(random_cloud(3, 1), g), std::invalid_argument);
}

TEST(E3, SeededDrawsRepeat) {
  EXPECT_EQ(random_e3(7).rotation, random_e3(7).rotation);
  EXPECT_EQ(random_permutation(10, 3), random_permutation(10, 3));
  auto p = random_permutation(10, 3);
  std::sort(p.begin(), p.end());
  std::vector<std::size_t> id(10);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_EQ(p, id);
}

TEST(Centering, RemovesTranslation) {
  const auto pc = random_cloud(7, 4);
  const auto c1 = center_coordinates(pc);
  const auto c2 = center_coordinates(apply_e3(pc, E3Transform::translate(Vec3(5, -3, 2))));
  Vec3 mean = Vec3::Zero();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    mean += c1[i];
    EXPECT_LT((c1[i] - c2[i]).norm(), 1e-12);
  }
  EXPECT_LT(mean.norm(), 1e-12);
}

TEST(Quantize, SharedAlphabetAcrossMatrices) {
  DistanceMatrix a(2, 2), b(2, 2);
  a << 0, 1.0, 1.0, 0;
  b << 0, 1.0 + 1e-12, 1.0 + 1e-12, 0;
  const std::vector<DistanceMatrix> ms{a, b};
  const auto q = canonicalize_distances(ms, 1e-9);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0](0, 1), q[1](0, 1));
  EXPECT_EQ(q[0](0, 0), 0u);
  EXPECT_EQ(q[0].num_classes(), 2u);
}

TEST(Quantize, SeparatesBeyondTolerance) {
  DistanceMatrix a(2, 2), b(2, 2);
  a << 0, 1.0, 1.0, 0;
  b << 0, 1.0 + 1e-6, 1.0 + 1e-6, 0;
  const std::vector<DistanceMatrix> ms{a, b};
  const auto q = canonicalize_distances(ms, 1e-9);
  EXPECT_NE(q[0](0, 1), q[1](0, 1));
  // Class ids follow distance order.
  EXPECT_LT(q[0](0, 1), q[1](0, 1));
}

TEST(Quantize, Errors) {
  DistanceMatrix a = DistanceMatrix::Zero(2, 2);
  const std::vector<DistanceMatrix> ms{a};
  EXPECT_THROW(canonicalize_distances(ms, 0.0), std::invalid_argument);
  DistanceMatrix chain(4, 4);
  chain << 0, 1.0, 1.0 + 8e-10, 1.0 + 1.6e-9, 1.0, 0, 1.0 + 2.4e-9, 1.0, 1.0 + 8e-10, 1.0 + 2.4e-9, 0, 1.0,
      1.0 + 1.6e-9, 1.0, 1.0, 0;
  const std::vector<DistanceMatrix> cm{chain};
  EXPECT_THROW(canonicalize_distances(cm, 1e-9), std::domain_error);
}

TEST(Congruence, AgreesWithExhaustiveOracleOnSmallClouds) {
  Rng rng(91);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(3 + rng.below(5));
    const auto a = random_cloud(n, rng.bits());
    PointCloud b;
    switch (trial % 3) {
      case 0: b = random_image(a, rng.bits()); break;
      case 1: b = random_cloud(n, rng.bits()); break;
      default: {
        // One point nudged: distances change, so never congruent.
        auto x = random_image(a, rng.bits()).coords();
        x[0] += Vec3(0.05, 0.0, 0.0);
        b = build_point_cloud(x);
      }
    }
    const bool expected = oracle::congruent_exhaustive(to_oracle(a), to_oracle(b), 1e-7);
    const auto v = congruent_bruteforce(a, b, 1e-7);
    EXPECT_EQ(v.congruent, expected) << "trial " << trial;
    if (v.congruent) {
      ASSERT_TRUE(v.witness_permutation);
      const auto& p = *v.witness_permutation;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR((a[i] - a[j]).norm(), (b[p[i]] - b[p[j]]).norm(), 1e-7);
      EXPECT_LE(v.max_residual, 1e-7);
    } else {
      EXPECT_FALSE(v.witness_permutation);
      EXPECT_TRUE(std::isinf(v.max_residual));
    }
  }
}

TEST(Congruence, SymmetricSubsetsAgreeWithOracle) {
  // Vertex subsets of the icosahedron are full of repeated distances.
  const auto ico = polyhedron(PolyhedronKind::icosahedron, 1.0);
  const auto sets = oracle::subsets(12, 5);
  for (std::size_t s = 0; s + 1 < sets.size(); s += 37) {
    std::vector<Vec3> xa, xb;
    for (auto v : sets[s]) xa.push_back(ico.vertices[v]);
    for (auto v : sets[s + 1]) xb.push_back(ico.vertices[v]);
    const auto a = build_point_cloud(xa);
    const auto b = build_point_cloud(xb);
    EXPECT_EQ(congruent_bruteforce(a, b).congruent, oracle::congruent_exhaustive(to_oracle(a), to_oracle(b), 1e-9));
  }
}

TEST(Congruence, LabelsMustMatch) {
  const auto a = random_cloud(4, 8);
  std::vector<std::int64_t> labels{1, 0, 0, 0};
  const PointCloud la(a.coords(), labels);
  EXPECT_FALSE(congruent_bruteforce(a, la).congruent);
  EXPECT_TRUE(congruent_bruteforce(la, random_image(la, 3)).congruent);
}

TEST(Congruence, SizeMismatch) {
  EXPECT_FALSE(congruent_bruteforce(random_cloud(4, 1), random_cloud(5, 1)).congruent);
}

TEST(Congruence, LargeSymmetricCloudsFinish) {
  const auto d = polyhedron(PolyhedronKind::dodecahedron, 1.3);
  const auto a = build_point_cloud(d.vertices);
  EXPECT_TRUE(congruent_bruteforce(a, random_image(a, 12)).congruent);
}
