#ifndef CRSU2_TRACTOR_HPP
#define CRSU2_TRACTOR_HPP

// Tractor bundles over K for the canonical connections. The Cartan bundle
// is trivial, so sections of the tractor bundle of a representation V are
// functions K -> V and the tractor connection reads
//   nabla_{L_X} f = L_X . f + rho(phi_lambda(X)) f.

#include <functional>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "crsu2/cartan.hpp"
#include "crsu2/groups.hpp"

namespace crsu2 {

enum class RepresentationKind { standard, adjoint };

/// su(2,1) acting on C^3.
struct StandardRepresentation {
  using Vector = Eigen::Vector3cd;
  static constexpr RepresentationKind kind = RepresentationKind::standard;

  static Vector act(const GMatrix& a, const Vector& v) { return a * v; }
  static double max_abs(const Vector& v) { return crsu2::max_abs(v); }
};

/// su(2,1) acting on itself by brackets.
struct AdjointRepresentation {
  using Vector = GMatrix;
  static constexpr RepresentationKind kind = RepresentationKind::adjoint;

  static Vector act(const GMatrix& a, const Vector& b) { return bracket(a, b); }
  static double max_abs(const Vector& v) { return crsu2::max_abs(v); }
};

template <class Rep>
using TractorFunction = std::function<typename Rep::Vector(const KGroupElement&)>;

template <class Rep>
TractorFunction<Rep> constant_tractor(const typename Rep::Vector& v) {
  return [v](const KGroupElement&) { return v; };
}

inline constexpr double kDefaultFdStep = 1e-4;

/// nabla_{L_X} f at k, with L_X . f approximated by a central difference
/// along k exp(s X).
template <class Rep>
typename Rep::Vector tractor_derivative(double lambda, const TractorFunction<Rep>& f, const KVector& x,
                                        const KGroupElement& k, double h = kDefaultFdStep) {
  if (!(lambda > 0.0) || !(h > 0.0)) throw std::invalid_argument("tractor_derivative: lambda and h must be positive");
  const PhiMap phi = phi_closed_form(lambda);
  const typename Rep::Vector forward = f(k * exp_k(h * x));
  const typename Rep::Vector backward = f(k * exp_k(-h * x));
  const typename Rep::Vector diff = (forward - backward) / (2.0 * h);
  return diff + Rep::act(phi(x), f(k));
}

/// f_X(k) = phi_lambda(Ad(k^{-1}) X): the adjoint tractor of the right
/// invariant field R_X.
inline GMatrix adjoint_tractor_of_right_field(double lambda, const KVector& x, const KGroupElement& k) {
  return phi_closed_form(lambda)(ad_k(k.inverse(), x));
}

inline TractorFunction<AdjointRepresentation> right_field_tractor(double lambda, const KVector& x) {
  const PhiMap phi = phi_closed_form(lambda);
  return [phi, x](const KGroupElement& k) { return phi(ad_k(k.inverse(), x)); };
}

/// Max-entry gap between the central difference of
/// t -> phi_lambda(Ad(exp(tY)^{-1}) Z) at 0 and -phi_lambda([Y, Z]).
inline double lie_derivative_identity_check(double lambda, const KVector& y, const KVector& z,
                                            double h = kDefaultFdStep) {
  if (!(lambda > 0.0) || !(h > 0.0)) throw std::invalid_argument("lie_derivative_identity_check: bad arguments");
  const PhiMap phi = phi_closed_form(lambda);
  const GMatrix forward = phi(ad_k(exp_k(h * y).inverse(), z));
  const GMatrix backward = phi(ad_k(exp_k(-h * y).inverse(), z));
  const GMatrix fd = (forward - backward) / (2.0 * h);
  return max_abs(GMatrix(fd + phi(bracket(y, z))));
}

/// Max-entry gap between nabla_{L_Y} s_X at k and kappa_lambda(Y, Ad(k^{-1}) X).
inline double infinitesimal_automorphism_check(double lambda, const KVector& x, const KVector& y,
                                               const KGroupElement& k, double h = kDefaultFdStep) {
  const GMatrix lhs = tractor_derivative<AdjointRepresentation>(lambda, right_field_tractor(lambda, x), y, k, h);
  const GMatrix rhs = curvature_closed_form(lambda, y, ad_k(k.inverse(), x));
  return max_abs(GMatrix(lhs - rhs));
}

/// Parallel section along s -> k exp(s X): v'(s) = -rho(phi_lambda(X)) v(s),
/// integrated with classical RK4. Returns the states at s = i * s_max / steps.
template <class Rep>
std::vector<typename Rep::Vector> transport_path(double lambda, const KVector& x, const typename Rep::Vector& v0,
                                                 double s_max, int steps) {
  if (steps < 1) throw std::invalid_argument("parallel_transport: steps must be at least 1");
  using Vector = typename Rep::Vector;
  const GMatrix a = phi_closed_form(lambda)(x);
  const auto rhs = [&a](const Vector& v) -> Vector { return -Rep::act(a, v); };
  const double h = s_max / steps;
  std::vector<Vector> path;
  path.reserve(steps + 1);
  path.push_back(v0);
  Vector v = v0;
  for (int i = 0; i < steps; ++i) {
    const Vector k1 = rhs(v);
    const Vector k2 = rhs(v + 0.5 * h * k1);
    const Vector k3 = rhs(v + 0.5 * h * k2);
    const Vector k4 = rhs(v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    path.push_back(v);
  }
  return path;
}

template <class Rep>
typename Rep::Vector parallel_transport(double lambda, const KVector& x, const typename Rep::Vector& v0,
                                        double s_max, int steps) {
  return transport_path<Rep>(lambda, x, v0, s_max, steps).back();
}

/// exp(-s rho(phi_lambda(X))) v0, by matrix exponential.
inline StandardRepresentation::Vector exact_transport_standard(double lambda, const KVector& x,
                                                               const Eigen::Vector3cd& v0, double s) {
  const GMatrix a = phi_closed_form(lambda)(x);
  return GMatrix((-s * a).exp()) * v0;
}

/// For the adjoint representation exp(-s ad_A) B = exp(-sA) B exp(sA).
inline GMatrix exact_transport_adjoint(double lambda, const KVector& x, const GMatrix& b0, double s) {
  const GMatrix a = phi_closed_form(lambda)(x);
  return GMatrix((-s * a).exp()) * b0 * GMatrix((s * a).exp());
}

/// The Hermitian form of signature (2,1): h(v, w) = w^dagger H v.
inline Complex hermitian_pairing(const Eigen::Vector3cd& v, const Eigen::Vector3cd& w) {
  return w.dot(form_matrix() * v);
}

}  // namespace crsu2

#endif  // CRSU2_TRACTOR_HPP
