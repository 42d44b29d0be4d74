#ifndef CRSU2_CARTAN_HPP
#define CRSU2_CARTAN_HPP

// Left-invariant Cartan connections on K x P -> K.
//
// A linear map phi: su(2) -> su(2,1) inducing an isomorphism su(2) -> g/p
// defines the Cartan connection
//   omega(L_X(k), L_A(g)) = Ad(g^{-1}) phi(X) + A
// whose curvature along K x {e} is the constant 2-form
//   kappa(X, Y) = [phi(X), phi(Y)] - phi([X, Y]).

#include <array>
#include <optional>
#include <stdexcept>

#include "crsu2/core.hpp"
#include "crsu2/groups.hpp"

namespace crsu2 {

class PhiMap {
 public:
  PhiMap() { images_.fill(GMatrix::Zero()); }
  explicit PhiMap(const std::array<GMatrix, 3>& images, std::optional<double> lambda = std::nullopt)
      : images_(images), lambda_(lambda) {}

  /// Images of E_t, E_u, E_v.
  const std::array<GMatrix, 3>& images() const { return images_; }
  const GMatrix& image(int i) const { return images_.at(i); }
  std::optional<double> lambda() const { return lambda_; }

  GMatrix operator()(const KVector& x) const {
    return x.t * images_[0] + x.z.real() * images_[1] + x.z.imag() * images_[2];
  }

  /// 3x3 real matrix whose columns are the g/p coordinates of the images.
  Eigen::Matrix3d quotient_matrix() const {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) m.col(i) = g_minus_coordinates(images_[i]);
    return m;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& m : images_) r = std::max(r, crsu2::max_abs(m));
    return r;
  }

  /// Images in g, isomorphism onto g/p, and phi(H_e) inside g^{-1}.
  bool satisfies_invariants(double tol = tol_alg) const {
    for (const auto& m : images_)
      if (!is_in_g(m, tol)) return false;
    const double scale = max_abs();
    const Eigen::Matrix3d q = quotient_matrix();
    if (negligible(q.determinant(), scale * scale * scale, tol)) return false;
    return in_filtration(images_[1], -1, tol, scale) && in_filtration(images_[2], -1, tol, scale);
  }

 private:
  std::array<GMatrix, 3> images_;
  std::optional<double> lambda_;
};

/// The canonical connection datum for (H, J_lambda), in closed form.
inline PhiMap phi_closed_form(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("phi_closed_form: lambda must be positive");
  const double l2 = lambda * lambda;
  const double sl = std::sqrt(lambda);
  const double diag = (1.0 + l2) / (4.0 * lambda);
  const double wu = (5.0 - 3.0 * l2) / (4.0 * sl);
  const double wv = (3.0 - 5.0 * l2) / (4.0 * lambda * sl);
  const double corner = (-15.0 + 34.0 * l2 - 15.0 * l2 * l2) / (16.0 * l2);

  // phi(it, u+iv): diag entries i*diag*t, -2i*diag*t, i*diag*t;
  // w = -wu*u - i*wv*v, psi = corner*t, x = sl*u + i*v/sl, phi-entry = t.
  const auto at = [&](double t, double u, double v) {
    return make_g(0.0, diag * t, Complex(-wu * u, -wv * v), corner * t, Complex(sl * u, v / sl), t);
  };
  return PhiMap({at(1, 0, 0), at(0, 1, 0), at(0, 0, 1)}, lambda);
}

/// The map H_e -> g^{-1}/p = C induced by phi, and the complex structure on
/// H_e obtained by pulling back multiplication by i through it. Both are
/// real 2x2 matrices in the (u, v) coordinates of H_e.
struct InducedCrStructure {
  Eigen::Matrix2d embedding;
  Eigen::Matrix2d complex_structure;

  KVector apply(const KVector& x) const {
    const Eigen::Vector2d r = complex_structure * Eigen::Vector2d(x.z.real(), x.z.imag());
    return {0.0, {r(0), r(1)}};
  }
};

inline InducedCrStructure induced_cr_structure(const PhiMap& phi) {
  if (!phi.satisfies_invariants())
    throw std::invalid_argument("induced_cr_structure: phi does not induce a CR structure");
  InducedCrStructure s;
  for (int c = 0; c < 2; ++c) {
    const Complex x = phi.image(c + 1)(1, 0);
    s.embedding(0, c) = x.real();
    s.embedding(1, c) = x.imag();
  }
  const double scale = max_abs(s.embedding);
  if (negligible(s.embedding.determinant(), scale * scale))
    throw std::domain_error("induced_cr_structure: H_e -> g^{-1}/p is singular");
  Eigen::Matrix2d mult_i;
  mult_i << 0.0, -1.0, 1.0, 0.0;
  s.complex_structure = s.embedding.inverse() * mult_i * s.embedding;
  return s;
}

/// omega at (k, g) on the tangent vector (L_X(k), L_A(g)).
inline GMatrix omega_eval(const PhiMap& phi, const PGroupElement& g, const KVector& x, const GMatrix& a) {
  if (!in_p(a)) throw std::invalid_argument("omega_eval: A is not in p");
  return ad_g(g.inverse(), phi(x)) + a;
}

/// Alternating bilinear map su(2) x su(2) -> su(2,1), stored on the basis
/// 2-vectors E_t^E_u, E_t^E_v, E_u^E_v.
struct CurvatureForm {
  std::array<GMatrix, 3> values{GMatrix::Zero(), GMatrix::Zero(), GMatrix::Zero()};

  GMatrix operator()(const KVector& x, const KVector& y) const {
    const Eigen::Vector3d w = wedge_coefficients(x.coordinates(), y.coordinates());
    return w(0) * values[0] + w(1) * values[1] + w(2) * values[2];
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& m : values) r = std::max(r, crsu2::max_abs(m));
    return r;
  }
};

inline GMatrix curvature_value(const PhiMap& phi, const KVector& x, const KVector& y) {
  return bracket(phi(x), phi(y)) - phi(bracket(x, y));
}

/// Curvature of the connection defined by phi, by brackets.
inline CurvatureForm curvature(const PhiMap& phi) {
  const auto& e = k_basis();
  CurvatureForm k;
  for (int p = 0; p < 3; ++p) {
    const auto [i, j] = kBasisPairs[p];
    k.values[p] = curvature_value(phi, e[i], e[j]);
  }
  return k;
}

namespace detail {

// kappa_lambda((it, 0), (0, u+iv)): only the g_1 block is nonzero.
inline GMatrix curvature_mixed(double lambda, double t, Complex z) {
  const double c = 3.0 * t * (std::pow(lambda, 4) - 1.0) / (2.0 * lambda * lambda * std::sqrt(lambda));
  const double u = z.real();
  const double v = z.imag();
  GMatrix m = GMatrix::Zero();
  m(0, 1) = -c * Complex(v, -lambda * u);
  m(1, 2) = c * Complex(v, lambda * u);
  return m;
}

}  // namespace detail

/// kappa_lambda(X, Y) from the explicit formula, without brackets:
/// kappa((it,z),(it',z')) = kappa((it,0),(0,z')) - kappa((it',0),(0,z)).
inline GMatrix curvature_closed_form(double lambda, const KVector& x, const KVector& y) {
  if (!(lambda > 0.0)) throw std::invalid_argument("curvature_closed_form: lambda must be positive");
  return detail::curvature_mixed(lambda, x.t, y.z) - detail::curvature_mixed(lambda, y.t, x.z);
}

inline CurvatureForm curvature_closed_form(double lambda) {
  const auto& e = k_basis();
  CurvatureForm k;
  for (int p = 0; p < 3; ++p) {
    const auto [i, j] = kBasisPairs[p];
    k.values[p] = curvature_closed_form(lambda, e[i], e[j]);
  }
  return k;
}

/// g_1 part of kappa, in the coordinate w = entry (0, 1).
struct HarmonicCurvature {
  Complex on_tu;  // kappa(E_t, E_u)
  Complex on_tv;  // kappa(E_t, E_v)

  Complex coefficient() const { return on_tu; }
};

inline HarmonicCurvature harmonic_curvature(const CurvatureForm& kappa, double tol = tol_alg) {
  const double scale = kappa.max_abs();
  for (const auto& v : kappa.values)
    if (!in_filtration(v, 1, tol, scale))
      throw std::domain_error("harmonic_curvature: curvature has components below g^1");
  return {kappa.values[0](0, 1), kappa.values[1](0, 1)};
}

/// |harmonic coefficient| on (E_t, E_u) from the explicit formula:
/// 3 |lambda^4 - 1| / (2 lambda^{3/2}).
inline double obstruction_magnitude_closed_form(double lambda) {
  return 3.0 * std::abs(std::pow(lambda, 4) - 1.0) / (2.0 * std::pow(lambda, 1.5));
}

}  // namespace crsu2

#endif  // CRSU2_CARTAN_HPP
