#include <gtest/gtest.h>

#include "crsu2/core.hpp"
#include "crsu2/random.hpp"

using namespace crsu2;

namespace {

const Complex I(0.0, 1.0);

void expect_k_near(const KVector& a, const KVector& b, double tol = 1e-14) {
  EXPECT_NEAR(a.t, b.t, tol);
  EXPECT_NEAR(std::abs(a.z - b.z), 0.0, tol);
}

}  // namespace

TEST(KAlgebra, BracketOfCrPlaneBasis) {
  // [(0,1),(0,i)] = (-2i, 0): H_e brackets into the Reeb direction.
  expect_k_near(bracket(KVector{0, 1.0}, KVector{0, I}), KVector{-2.0, 0.0});
}

TEST(KAlgebra, BracketWithReebRotatesPlane) {
  expect_k_near(bracket(KVector{1, 0.0}, KVector{0, 1.0}), KVector{0, -2.0 * I});
}

TEST(KAlgebra, MatrixRoundTrip) {
  const KVector x{0.3, {-1.2, 0.7}};
  expect_k_near(KVector::from_matrix(x.matrix()), x);
  EXPECT_NEAR(std::abs(x.matrix().trace()), 0.0, 1e-15);
  EXPECT_LT(max_abs(KMatrix(x.matrix() + x.matrix().adjoint())), 1e-15);
}

TEST(KAlgebra, JacobiOnRandomTriples) {
  Rng rng(7);
  for (int n = 0; n < 200; ++n) {
    const KVector x = rng.k_vector(), y = rng.k_vector(), z = rng.k_vector();
    const KVector s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    EXPECT_LT(s.max_abs(), 1e-12);
  }
}

TEST(KAlgebra, ContactForm) {
  EXPECT_EQ(contact_form(KVector{2.5, {1, 1}}), 2.5);
  EXPECT_EQ(contact_form(KVector{0, {1, 1}}), 0.0);
}

TEST(JLambda, IsStandardAtOne) {
  expect_k_near(j_lambda(1.0, KVector{0, 1.0}), KVector{0, I});
  expect_k_near(j_lambda(1.0, KVector{0, I}), KVector{0, -1.0});
}

TEST(JLambda, SquaresToMinusOne) {
  for (double l : {0.1, 0.5, 2.0, 7.0}) {
    const KVector x{0, {0.4, -1.3}};
    expect_k_near(j_lambda(l, j_lambda(l, x)), -1.0 * x, 1e-13);
  }
}

TEST(JLambda, PreservesLeviForm) {
  // [JX, JY] = [X, Y] on H_e for every lambda.
  const KVector x{0, {0.4, -1.3}}, y{0, {2.0, 0.5}};
  for (double l : {0.3, 1.0, 4.0})
    expect_k_near(bracket(j_lambda(l, x), j_lambda(l, y)), bracket(x, y), 1e-13);
}

TEST(JLambda, RejectsBadInput) {
  EXPECT_THROW(j_lambda(0.0, KVector{0, 1.0}), std::invalid_argument);
  EXPECT_THROW(j_lambda(-1.0, KVector{0, 1.0}), std::invalid_argument);
  EXPECT_THROW(j_lambda(1.0, KVector{1.0, 0.0}), std::invalid_argument);
}

TEST(GAlgebra, BasisElementsLieInG) {
  for (const auto& b : g_basis()) EXPECT_TRUE(is_in_g(b));
  EXPECT_FALSE(is_in_g(GMatrix::Identity()));
}

TEST(GAlgebra, CoordinateRoundTrip) {
  Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    const GMatrix a = rng.g_element();
    EXPECT_LT(max_abs(GMatrix(from_g_coordinates(g_coordinates(a)) - a)), 1e-15);
  }
}

TEST(GAlgebra, GradingIsCompatibleWithBracket) {
  Rng rng(11);
  for (int n = 0; n < 50; ++n) {
    const GradedElement a = grade(rng.g_element());
    const GradedElement b = grade(rng.g_element());
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        const GMatrix c = bracket(a[i], b[j]);
        if (i + j < -2 || i + j > 2) {
          EXPECT_LT(max_abs(c), 1e-14);
        } else {
          EXPECT_LT(max_abs(GMatrix(c - graded_part(c, i + j))), 1e-14);
        }
      }
  }
}

TEST(GAlgebra, GradeSumsBack) {
  const GMatrix a = make_g(0.1, 0.2, {0.3, 0.4}, 0.5, {0.6, 0.7}, 0.8);
  EXPECT_LT(max_abs(GMatrix(grade(a).sum() - a)), 1e-15);
  EXPECT_THROW(grade(GMatrix::Identity()), std::invalid_argument);
}

TEST(GAlgebra, FiltrationDegree) {
  const auto& g = g_basis();
  for (int i = 0; i < 8; ++i) EXPECT_EQ(filtration_degree(g[i]), kBasisDegree[i]);
  EXPECT_FALSE(filtration_degree(GMatrix::Zero()).has_value());
  EXPECT_TRUE(in_filtration(GMatrix::Zero(), 2));
  EXPECT_EQ(filtration_degree(GMatrix(g[5] + g[7])), 1);
  EXPECT_TRUE(in_p(g[3]));
  EXPECT_FALSE(in_p(g[1]));
}

TEST(GAlgebra, JacobiOnRandomTriples) {
  Rng rng(5);
  for (int n = 0; n < 200; ++n) {
    const GMatrix x = rng.g_element(), y = rng.g_element(), z = rng.g_element();
    const GMatrix s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    EXPECT_LT(max_abs(s), 1e-12);
  }
}

TEST(GAlgebra, LeviBracketIsNondegenerate) {
  // g_{-2} coordinate of [g_{-1}, g_{-1}].
  const auto& g = g_basis();
  const GMatrix c = bracket(g[1], g[2]);
  EXPECT_GT(std::abs(g_coordinates(c)(0)), 0.5);
  EXPECT_LT(max_abs(GMatrix(c - graded_part(c, -2))), 1e-15);
}

TEST(GAlgebra, PPlusDualPairsWithGMinus) {
  const auto& t = basis_tables();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      EXPECT_NEAR(trace_form(t.p_plus_dual[a], t.g_basis[b]), a == b ? 1.0 : 0.0, 1e-15);
}

TEST(Tolerances, NegligibleIsMixedAbsoluteRelative) {
  EXPECT_TRUE(negligible(5e-11, 0.0));
  EXPECT_FALSE(negligible(5e-10, 0.0));
  EXPECT_TRUE(negligible(5e-10, 10.0));
}

TEST(Wedge, Coefficients) {
  const Eigen::Vector3d w = wedge_coefficients({1, 0, 0}, {0, 1, 0});
  EXPECT_EQ(w, Eigen::Vector3d(1, 0, 0));
  EXPECT_EQ(wedge_coefficients({0, 0, 1}, {0, 1, 0}), Eigen::Vector3d(0, 0, -1));
}

TEST(Rng, IsDeterministic) {
  Rng a(99), b(99), c(100);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NE(Rng(99).uniform(), c.uniform());
}
