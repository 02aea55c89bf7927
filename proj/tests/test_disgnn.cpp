#include <gtest/gtest.h>

#include <cmath>

#include "diswl/counterexamples.hpp"
#include "diswl/disgnn.hpp"
#include "diswl/parallel.hpp"
#include "diswl/wl_engine.hpp"
#include "helpers.hpp"

using namespace diswl;
using testing_helpers::random_cloud;
using testing_helpers::random_image;

namespace {

ModelConfig small(Variant v, int k, int rounds, std::uint64_t seed = 0) {
  ModelConfig c;
  c.variant = v;
  c.k = k;
  c.rounds = rounds;
  c.seed = seed;
  c.hidden_dim = 12;
  c.rbf_dim = 8;
  c.label_embed_dim = 4;
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); }

PointCloud tetrahedron() {
  return build_point_cloud({Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)});
}

}  // namespace

TEST(Rbf, Formula) {
  const auto p = RbfParams::evenly_spaced(4, 10.0);
  ASSERT_EQ(p.mus.size(), 4u);
  EXPECT_DOUBLE_EQ(p.mus.back(), 1.0);
  for (double mu : p.mus) {
    EXPECT_GT(mu, 0.0);
    EXPECT_LE(mu, 1.0);
  }
  // exp(-d) = mu_1 puts component 1 at its peak.
  const double d = -std::log(p.mus[1]);
  EXPECT_NEAR(rbf_expand(d, p)[1], 1.0, 1e-15);
  const auto far = rbf_expand(1e3, p);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(far[k], std::exp(-10.0 * p.mus[k] * p.mus[k]), 1e-15);
  RbfParams one{{1.0}, {1.0}};
  EXPECT_DOUBLE_EQ(rbf_expand(0.0, one)[0], 1.0);
}

TEST(Config, Validation) {
  auto c = small(Variant::f, 2, 1);
  EXPECT_NO_THROW(c.validate());
  c.k = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small(Variant::f, 2, -1);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small(Variant::f, 2, 1);
  c.hidden_dim = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_EQ(parse_variant("e"), Variant::e);
  EXPECT_THROW(parse_variant("g"), std::invalid_argument);
}

TEST(Weights, DeterministicInSeed) {
  const auto a = make_weights(small(Variant::e, 2, 2, 5));
  const auto b = make_weights(small(Variant::e, 2, 2, 5));
  const auto c = make_weights(small(Variant::e, 2, 2, 6));
  EXPECT_EQ(a.rounds[1].update.w1, b.rounds[1].update.w1);
  EXPECT_NE(a.rounds[1].update.w1, c.rounds[1].update.w1);
  EXPECT_EQ(a.label_embedding(7), b.label_embedding(7));
  EXPECT_NE(a.label_embedding(7), a.label_embedding(8));
  const double bound = 1.0 / std::sqrt(static_cast<double>(a.rounds[0].update.w1.cols()));
  EXPECT_LE(a.rounds[0].update.w1.cwiseAbs().maxCoeff(), bound);
}

TEST(Weights, InitAndReadoutSharedAcrossRoundCounts) {
  // Only round weights depend on T, so T = 0 models agree across variants.
  const auto pc = random_cloud(5, 3);
  const double plain = forward(pc, small(Variant::plain, 2, 0, 4)).scalar;
  EXPECT_EQ(plain, forward(pc, small(Variant::f, 2, 0, 4)).scalar);
  EXPECT_EQ(plain, forward(pc, small(Variant::e, 2, 0, 4)).scalar);
}

TEST(Init, EqualityPatternSeparatesDiagonal) {
  const auto pc = random_cloud(4, 11);
  const auto w = make_weights(small(Variant::f, 2, 0));
  const auto h = init_reps(pc, w);
  ASSERT_EQ(h.cols(), 16);
  EXPECT_GT((h.col(0) - h.col(1)).norm(), 1e-6);  // (0,0) vs (0,1)
  EXPECT_LT((h.col(0) - h.col(5)).norm(), 1e-9);  // (0,0) vs (1,1): same label, no distances
}

TEST(Init, DependsOnlyOnDistances) {
  const auto pc = random_cloud(5, 12);
  const auto moved = apply_e3(pc, random_e3(3));
  const auto w = make_weights(small(Variant::f, 3, 0));
  EXPECT_LT((init_reps(pc, w) - init_reps(moved, w)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Steps, ZeroRoundsIsInit) {
  const auto pc = random_cloud(4, 2);
  const auto w = make_weights(small(Variant::plain, 2, 0));
  EXPECT_EQ(forward(pc, w).tuple_reps, init_reps(pc, w));
}

TEST(Steps, PermutationEquivariance) {
  const auto pc = random_cloud(5, 21);
  const std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  const auto q = pc.permuted(perm);
  for (auto v : {Variant::plain, Variant::f, Variant::e}) {
    const auto w = make_weights(small(v, 2, 2));
    const auto hp = forward(pc, w).tuple_reps;
    const auto hq = forward(q, w).tuple_reps;
    // Tuple (i, j) of q is tuple (perm[i], perm[j]) of pc.
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        EXPECT_LT((hq.col(static_cast<Eigen::Index>(i * 5 + j)) -
                   hp.col(static_cast<Eigen::Index>(perm[i] * 5 + perm[j])))
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-8);
  }
}

TEST(Steps, EdgeStateForPairsIsFunctionOfDistanceAndTuple) {
  // k = 2: e_ij depends on (rbf(d_ij), h_ij) only, so equal inputs give
  // equal edge states.
  const auto pc = tetrahedron();
  const auto w = make_weights(small(Variant::e, 2, 1));
  const auto h = init_reps(pc, w);
  const auto e = edge_states(h, pc, w, 0);
  ASSERT_EQ(e.cols(), 16);
  EXPECT_LT((e.col(1) - e.col(2)).norm(), 1e-9);
  EXPECT_LT((e.col(1) - e.col(4)).norm(), 1e-9);
  EXPECT_GT((e.col(0) - e.col(1)).norm(), 1e-6);
}

TEST(Readout, InvariantToE3AndPermutation) {
  for (auto v : {Variant::plain, Variant::f, Variant::e}) {
    for (int k : {2, 3}) {
      const auto w = make_weights(small(v, k, 2, 1));
      const auto pc = random_cloud(5, 40 + static_cast<std::uint64_t>(k));
      const double s = forward(pc, w).scalar;
      for (std::uint64_t g = 0; g < 3; ++g) EXPECT_LE(rel(s, forward(random_image(pc, g), w).scalar), 1e-8);
    }
  }
}

TEST(NodeReps, AutomorphicNodesAgree) {
  const auto w = make_weights(small(Variant::f, 2, 2));
  const auto out = forward(tetrahedron(), w);
  for (Eigen::Index m = 1; m < 4; ++m) EXPECT_LT((out.node_reps.col(0) - out.node_reps.col(m)).norm(), 1e-9);
}

TEST(NodeReps, GenericNodesDiffer) {
  const auto w = make_weights(small(Variant::f, 2, 1));
  const auto out = forward(random_cloud(5, 77), w);
  for (Eigen::Index a = 0; a < 5; ++a)
    for (Eigen::Index b = a + 1; b < 5; ++b) EXPECT_GT((out.node_reps.col(a) - out.node_reps.col(b)).norm(), 1e-8);
}

TEST(NodeReps, InvariantPerNode) {
  const auto w = make_weights(small(Variant::e, 2, 2));
  const auto pc = random_cloud(6, 8);
  const auto moved = apply_e3(pc, random_e3(2));
  EXPECT_LT((forward(pc, w).node_reps - forward(moved, w).node_reps).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Equivariant, RotationsReflectionsTranslations) {
  const auto w = make_weights(small(Variant::f, 2, 2, 3));
  const auto pc = random_cloud(6, 19);
  const auto base = forward(pc, w).equivariant;
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto g = random_e3(s);
    g.translation.setZero();
    const auto out = forward(apply_e3(pc, g), w).equivariant;
    EXPECT_LE((out - g.rotation * base).norm(), 1e-8 * (1.0 + base.norm()));
  }
  const auto shifted = forward(apply_e3(pc, E3Transform::translate(Vec3(3, -7, 2))), w).equivariant;
  EXPECT_LE((shifted - base).norm(), 1e-8);
}

TEST(Equivariant, TetrahedronGivesZero) {
  for (auto v : {Variant::plain, Variant::f, Variant::e}) {
    const auto w = make_weights(small(v, 2, 2));
    EXPECT_LE(forward(tetrahedron(), w).equivariant.norm(), 1e-8);
  }
}

TEST(Forward, SameSeedSameBits) {
  const auto pc = random_cloud(5, 5);
  const auto a = forward(pc, small(Variant::e, 2, 2, 9));
  const auto b = forward(pc, small(Variant::e, 2, 2, 9));
  EXPECT_EQ(a.scalar, b.scalar);
  EXPECT_EQ(a.tuple_reps, b.tuple_reps);
}

TEST(Forward, SeparatesFigure2AndSize6) {
  ModelConfig c;
  c.variant = Variant::f;
  c.rounds = 3;
  for (auto v : {BaseVariant::fig2, BaseVariant::dodec6}) {
    const auto p = base_pair(v);
    int separating = 0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      c.seed = s;
      const auto w = make_weights(c);
      if (std::abs(forward(p.left, w).scalar - forward(p.right, w).scalar) > 1e-6) ++separating;
    }
    EXPECT_GE(separating, 4) << to_string(v);
  }
}

TEST(Forward, AgreesWhereDiscreteTestAgrees) {
  const auto p = figure2_pair();
  RefinementConfig discrete;
  discrete.method = Method::kwl;
  discrete.rounds = 2;
  ASSERT_FALSE(distinguish(p.left, p.right, discrete).distinguished);
  ModelConfig c;
  c.variant = Variant::plain;
  c.rounds = 2;
  const auto w = make_weights(c);
  EXPECT_LE(rel(forward(p.left, w).scalar, forward(p.right, w).scalar), 1e-9);
}

TEST(Forward, ThreadCountAgreement) {
  const auto pc = random_cloud(7, 13);
  const auto before = thread_count();
  for (auto v : {Variant::plain, Variant::f, Variant::e}) {
    const auto w = make_weights(small(v, 2, 2));
    set_thread_count(1);
    const double one = forward(pc, w).scalar;
    set_thread_count(4);
    const double four = forward(pc, w).scalar;
    EXPECT_LE(rel(one, four), 1e-10);
  }
  set_thread_count(before);
}

TEST(Forward, TupleCap) {
  auto c = small(Variant::f, 3, 1);
  c.max_tuples = 100;
  EXPECT_THROW(forward(random_cloud(5, 1), c), std::exception);
}
