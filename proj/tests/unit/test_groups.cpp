#include <numbers>

#include <gtest/gtest.h>

#include "crsu2/groups.hpp"
#include "crsu2/random.hpp"

using namespace crsu2;

namespace {
const Complex I(0.0, 1.0);
}

TEST(ExpK, HalfTurnAboutReebIsMinusIdentity) {
  const KGroupElement k = exp_k(KVector{std::numbers::pi, 0.0});
  EXPECT_LT(max_abs(KMatrix(k.matrix() + KMatrix::Identity())), 1e-15);
}

TEST(ExpK, ZeroIsIdentity) {
  EXPECT_LT(max_abs(KMatrix(exp_k(KVector{}).matrix() - KMatrix::Identity())), 1e-16);
}

TEST(ExpK, MatchesMatrixExponential) {
  Rng rng(1);
  for (int n = 0; n < 20; ++n) {
    const KVector x = rng.k_vector(3.0);
    EXPECT_LT(max_abs(KMatrix(exp_k(x).matrix() - KMatrix(x.matrix().exp()))), 1e-13);
  }
}

TEST(ExpK, SmallArgumentBranch) {
  const KVector x{1e-10, {2e-10, 0}};
  EXPECT_LT(max_abs(KMatrix(exp_k(x).matrix() - KMatrix(x.matrix().exp()))), 1e-18);
}

TEST(KGroup, RejectsNonUnitary) {
  KMatrix m = KMatrix::Identity();
  m(0, 0) = 2.0;
  EXPECT_THROW(KGroupElement{m}, std::invalid_argument);
  KMatrix d = KMatrix::Zero();
  d(0, 0) = I;
  d(1, 1) = I;  // unitary but det = -1
  EXPECT_THROW(KGroupElement{d}, std::invalid_argument);
}

TEST(KGroup, InverseAndAdjoint) {
  Rng rng(2);
  for (int n = 0; n < 20; ++n) {
    const KGroupElement k = rng.k_group();
    const KVector x = rng.k_vector(), y = rng.k_vector();
    EXPECT_LT(max_abs(KMatrix((k * k.inverse()).matrix() - KMatrix::Identity())), 1e-14);
    // Ad is a Lie algebra automorphism.
    const KVector lhs = ad_k(k, bracket(x, y));
    const KVector rhs = bracket(ad_k(k, x), ad_k(k, y));
    EXPECT_LT((lhs - rhs).max_abs(), 1e-13);
  }
}

TEST(ExpP, NilpotentAndGeneralBranches) {
  Rng rng(4);
  for (int n = 0; n < 20; ++n) {
    const GMatrix z = rng.p_plus_element();
    EXPECT_LT(max_abs(GMatrix(exp_p(z).matrix() - GMatrix(z.exp()))), 1e-14);
    const GMatrix a = rng.p_element();
    EXPECT_TRUE(in_p(a));
    const PGroupElement p = exp_p(a);
    EXPECT_LT(max_abs(GMatrix(p.matrix().adjoint() * form_matrix() * p.matrix() - form_matrix())), 1e-12);
  }
}

TEST(ExpP, RejectsElementsOutsideP) {
  EXPECT_THROW(exp_p(g_basis()[0]), std::invalid_argument);
  EXPECT_THROW(exp_p(g_basis()[1]), std::invalid_argument);
}

TEST(PGroup, RejectsNonMembers) {
  EXPECT_THROW(PGroupElement{GMatrix(2.0 * GMatrix::Identity())}, std::invalid_argument);
  // exp of a g_{-2} element preserves H but moves the isotropic line.
  EXPECT_THROW(PGroupElement{GMatrix(g_basis()[0].exp())}, std::invalid_argument);
}

TEST(PGroup, InverseIsHDaggerH) {
  Rng rng(6);
  for (int n = 0; n < 20; ++n) {
    const PGroupElement p = rng.p_group();
    EXPECT_LT(max_abs(GMatrix((p * p.inverse()).matrix() - GMatrix::Identity())), 1e-12);
  }
}

TEST(PGroup, AdPreservesFiltration) {
  Rng rng(8);
  for (int n = 0; n < 50; ++n) {
    const PGroupElement p = rng.p_group();
    const GMatrix a = rng.g_element();
    const int d = *filtration_degree(a);
    const GMatrix b = ad_g(p, a);
    EXPECT_TRUE(is_in_g(b, 1e-12));
    EXPECT_TRUE(in_filtration(b, d, 1e-12));
    for (int i = 5; i < 8; ++i) EXPECT_TRUE(in_filtration(ad_g(p, g_basis()[i]), kBasisDegree[i], 1e-12));
  }
}

TEST(Decompose, RoundTripOnRandomElements) {
  Rng rng(10);
  for (int n = 0; n < 50; ++n) {
    const PGroupElement p = rng.p_group(1.5);
    const PDecomposition d = decompose_p(p);
    EXPECT_TRUE(is_grading_preserving(d.g0));
    EXPECT_EQ(filtration_degree(d.z1).value_or(1), 1);
    EXPECT_EQ(filtration_degree(d.z2).value_or(2), 2);
    EXPECT_LT(max_abs(GMatrix(d.recompose().matrix() - p.matrix())), 1e-12);
  }
}

TEST(Decompose, RecoversKnownFactors) {
  const PGroupElement g0 = exp_p(make_g(0.3, -0.2, 0, 0, 0, 0));
  const GMatrix z1 = make_g(0, 0, {0.5, -0.25}, 0, 0, 0);
  const GMatrix z2 = make_g(0, 0, 0, 0.75, 0, 0);
  const PDecomposition d = decompose_p(g0 * exp_p(z1) * exp_p(z2));
  EXPECT_LT(max_abs(GMatrix(d.g0.matrix() - g0.matrix())), 1e-14);
  EXPECT_LT(max_abs(GMatrix(d.z1 - z1)), 1e-14);
  EXPECT_LT(max_abs(GMatrix(d.z2 - z2)), 1e-14);
}

TEST(Decompose, IdentityDecomposesTrivially) {
  const PDecomposition d = decompose_p(PGroupElement::identity());
  EXPECT_LT(max_abs(GMatrix(d.g0.matrix() - GMatrix::Identity())), 1e-16);
  EXPECT_LT(max_abs(d.z1), 1e-16);
  EXPECT_LT(max_abs(d.z2), 1e-16);
}

TEST(G0, ActsOnQuotientByComplexScalar) {
  // diag(a, conj(a)/a, 1/conj(a)) acts on x by conj(a)/a^2.
  const Complex a = std::polar(1.7, 0.4);
  const PGroupElement g0(GMatrix(Eigen::Vector3cd(a, std::conj(a) / a, 1.0 / std::conj(a)).asDiagonal()));
  const Complex c = g0_to_complex(g0);
  EXPECT_NEAR(std::abs(c - std::conj(a) / (a * a)), 0.0, 1e-14);
  const GMatrix image = ad_g(g0, g_basis()[2]);
  EXPECT_NEAR(std::abs(image(1, 0) - c * I), 0.0, 1e-14);
  EXPECT_THROW(g0_to_complex(exp_p(g_basis()[5])), std::invalid_argument);
}
