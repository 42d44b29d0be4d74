#include <numbers>

#include <gtest/gtest.h>

#include "crsu2/random.hpp"
#include "crsu2/tractor.hpp"

using namespace crsu2;

TEST(Tractor, ConstantSectionDerivativeIsAction) {
  const KVector x{0.4, {1.0, -0.3}};
  const Eigen::Vector3cd v(1.0, Complex(0, 1), -2.0);
  const auto d = tractor_derivative<StandardRepresentation>(2.0, constant_tractor<StandardRepresentation>(v), x,
                                                            KGroupElement::identity());
  EXPECT_LT(max_abs(Eigen::Vector3cd(d - phi_closed_form(2.0)(x) * v)), 1e-12);
  EXPECT_THROW(tractor_derivative<StandardRepresentation>(-1.0, constant_tractor<StandardRepresentation>(v), x,
                                                          KGroupElement::identity()),
               std::invalid_argument);
}

TEST(Tractor, LieDerivativeIdentity) {
  Rng rng(40);
  for (double l : {0.5, 1.0, 2.0})
    for (int n = 0; n < 10; ++n) EXPECT_LT(lie_derivative_identity_check(l, rng.k_vector(), rng.k_vector()), 1e-6);
}

TEST(Tractor, LieDerivativeConvergesQuadratically) {
  const KVector y{0.7, {0.2, -0.9}}, z{-0.3, {1.1, 0.4}};
  const double e1 = lie_derivative_identity_check(2.0, y, z, 1e-2);
  const double e2 = lie_derivative_identity_check(2.0, y, z, 5e-3);
  EXPECT_NEAR(e1 / e2, 4.0, 0.8);
}

TEST(Tractor, InfinitesimalAutomorphism) {
  Rng rng(41);
  for (double l : {0.5, 1.0, 2.0})
    for (int n = 0; n < 10; ++n)
      EXPECT_LT(infinitesimal_automorphism_check(l, rng.k_vector(), rng.k_vector(), rng.k_group()), 1e-6);
}

TEST(Tractor, RightFieldIsParallelWhenFlat) {
  const KVector x{0.5, {0.5, 0.5}}, y{-1.0, {0.25, 0.0}};
  const GMatrix d = tractor_derivative<AdjointRepresentation>(1.0, right_field_tractor(1.0, x), y,
                                                              exp_k(KVector{0.3, {0.1, 0.2}}));
  EXPECT_LT(max_abs(d), 1e-6);
}

TEST(Transport, StandardMatchesExponential) {
  const Eigen::Vector3cd v0(1.0, Complex(0.5, -0.5), 2.0);
  for (double l : {0.5, 1.0, 2.0}) {
    const KVector x{1.0, {0.3, 0.1}};
    const auto rk = parallel_transport<StandardRepresentation>(l, x, v0, 1.0, 1000);
    EXPECT_LT(max_abs(Eigen::Vector3cd(rk - exact_transport_standard(l, x, v0, 1.0))), 1e-10);
  }
}

TEST(Transport, AdjointMatchesExponential) {
  Rng rng(42);
  const GMatrix b0 = rng.g_element();
  const auto rk = parallel_transport<AdjointRepresentation>(2.0, KVector{1.0, 0.0}, b0, 1.0, 1000);
  EXPECT_LT(max_abs(GMatrix(rk - exact_transport_adjoint(2.0, KVector{1.0, 0.0}, b0, 1.0))), 1e-10);
}

TEST(Transport, ConservesHermitianPairing) {
  const Eigen::Vector3cd v0(1.0, Complex(0.5, -0.5), 2.0), w0(Complex(0, 1), -1.0, 0.25);
  const auto pv = transport_path<StandardRepresentation>(2.0, KVector{1.0, 0.0}, v0, 2 * std::numbers::pi, 1000);
  const auto pw = transport_path<StandardRepresentation>(2.0, KVector{1.0, 0.0}, w0, 2 * std::numbers::pi, 1000);
  ASSERT_EQ(pv.size(), 1001u);
  const Complex h0 = hermitian_pairing(v0, w0);
  for (std::size_t i = 0; i < pv.size(); ++i) EXPECT_LT(std::abs(hermitian_pairing(pv[i], pw[i]) - h0), 1e-8);
}

TEST(Transport, HermitianPairingSignature) {
  EXPECT_NEAR(hermitian_pairing(Eigen::Vector3cd(0, 1, 0), Eigen::Vector3cd(0, 1, 0)).real(), 1.0, 0);
  const Eigen::Vector3cd null(1, 0, 0);
  EXPECT_EQ(hermitian_pairing(null, null), Complex(0.0));
  const Eigen::Vector3cd neg(1, 0, -1);
  EXPECT_LT(hermitian_pairing(neg, neg).real(), 0.0);
}

TEST(Transport, RejectsZeroSteps) {
  EXPECT_THROW(transport_path<StandardRepresentation>(1.0, KVector{1, 0.0}, Eigen::Vector3cd::Zero(), 1.0, 0),
               std::invalid_argument);
}

TEST(Transport, ZeroLengthReturnsStart) {
  const Eigen::Vector3cd v0(1.0, 2.0, Complex(0, 3));
  EXPECT_EQ(parallel_transport<StandardRepresentation>(2.0, KVector{1, 0.0}, v0, 0.0, 10), v0);
}

TEST(Representations, PreserveBrackets) {
  Rng rng(43);
  for (int n = 0; n < 100; ++n) {
    const GMatrix a = rng.g_element(), b = rng.g_element();
    const Eigen::Vector3cd v(Complex(rng.uniform(), rng.uniform()), rng.uniform(), Complex(0, rng.uniform()));
    using S = StandardRepresentation;
    using A = AdjointRepresentation;
    const Eigen::Vector3cd ds = S::act(bracket(a, b), v) - (S::act(a, S::act(b, v)) - S::act(b, S::act(a, v)));
    EXPECT_LT(max_abs(ds), 1e-11);
    const GMatrix c = rng.g_element();
    const GMatrix da = A::act(bracket(a, b), c) - (A::act(a, A::act(b, c)) - A::act(b, A::act(a, c)));
    EXPECT_LT(max_abs(da), 1e-11);
  }
}
