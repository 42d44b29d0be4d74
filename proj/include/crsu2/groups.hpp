#ifndef CRSU2_GROUPS_HPP
#define CRSU2_GROUPS_HPP

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "crsu2/core.hpp"

namespace crsu2 {

/// Element of K = SU(2).
class KGroupElement {
 public:
  KGroupElement() : m_(KMatrix::Identity()) {}

  explicit KGroupElement(const KMatrix& m, double tol = tol_alg) : m_(m) {
    const double unitarity = max_abs(KMatrix(m.adjoint() * m - KMatrix::Identity()));
    if (!negligible(unitarity, 1.0, tol) || !negligible(std::abs(m.determinant() - 1.0), 1.0, tol))
      throw std::invalid_argument("KGroupElement: matrix is not in SU(2)");
  }

  static KGroupElement identity() { return {}; }

  const KMatrix& matrix() const { return m_; }

  KGroupElement inverse() const { return KGroupElement(m_.adjoint(), unchecked{}); }

  friend KGroupElement operator*(const KGroupElement& a, const KGroupElement& b) {
    return KGroupElement(a.m_ * b.m_, unchecked{});
  }

 private:
  struct unchecked {};
  KGroupElement(const KMatrix& m, unchecked) : m_(m) {}

  KMatrix m_;
};

/// Element of the parabolic subgroup P of SU(2,1) stabilizing the line
/// through the first basis vector.
class PGroupElement {
 public:
  PGroupElement() : m_(GMatrix::Identity()) {}

  explicit PGroupElement(const GMatrix& m, double tol = tol_alg) : m_(m) {
    const GMatrix& h = form_matrix();
    const double scale = max_abs(m) * max_abs(m);
    if (!negligible(max_abs(GMatrix(m.adjoint() * h * m - h)), scale, tol))
      throw std::invalid_argument("PGroupElement: matrix does not preserve the Hermitian form");
    if (!negligible(std::abs(m.determinant() - 1.0), scale * max_abs(m), tol))
      throw std::invalid_argument("PGroupElement: determinant is not 1");
    if (!negligible(std::abs(m(1, 0)), max_abs(m), tol) || !negligible(std::abs(m(2, 0)), max_abs(m), tol))
      throw std::invalid_argument("PGroupElement: matrix does not stabilize the isotropic line");
  }

  static PGroupElement identity() { return {}; }

  const GMatrix& matrix() const { return m_; }

  // H-unitary, so the inverse is H g^dagger H.
  PGroupElement inverse() const {
    const GMatrix& h = form_matrix();
    return PGroupElement(GMatrix(h * m_.adjoint() * h), unchecked{});
  }

  friend PGroupElement operator*(const PGroupElement& a, const PGroupElement& b) {
    return PGroupElement(a.m_ * b.m_, unchecked{});
  }

 private:
  struct unchecked {};
  PGroupElement(const GMatrix& m, unchecked) : m_(m) {}

  GMatrix m_;
};

/// exp of (it, z): for traceless skew-Hermitian M, M^2 = -theta^2 I with
/// theta = |(t, z)|, hence exp(M) = cos(theta) I + sin(theta)/theta M.
inline KGroupElement exp_k(const KVector& x) {
  const double theta = std::sqrt(x.t * x.t + std::norm(x.z));
  const double sinc = theta < 1e-8 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
  const KMatrix m = std::cos(theta) * KMatrix::Identity() + sinc * x.matrix();
  return KGroupElement(m);
}

inline PGroupElement exp_p(const GMatrix& a) {
  if (!in_p(a)) throw std::invalid_argument("exp_p: argument is not in p");
  const bool nilpotent = negligible(max_abs(graded_part(a, 0)), max_abs(a));
  if (nilpotent) {
    // a in g_1 + g_2 is strictly upper triangular, so a^3 = 0.
    return PGroupElement(GMatrix(GMatrix::Identity() + a + 0.5 * a * a));
  }
  return PGroupElement(GMatrix(a.exp()));
}

inline KVector ad_k(const KGroupElement& k, const KVector& x) {
  return KVector::from_matrix(k.matrix() * x.matrix() * k.matrix().adjoint());
}

inline GMatrix ad_g(const PGroupElement& p, const GMatrix& a) {
  return p.matrix() * a * p.inverse().matrix();
}

/// p = g0 exp(z1) exp(z2) with g0 in G_0, z1 in g_1, z2 in g_2.
struct PDecomposition {
  PGroupElement g0;
  GMatrix z1 = GMatrix::Zero();
  GMatrix z2 = GMatrix::Zero();

  PGroupElement recompose() const { return g0 * exp_p(z1) * exp_p(z2); }
};

inline bool is_grading_preserving(const PGroupElement& p, double tol = tol_alg) {
  const GMatrix& m = p.matrix();
  const double scale = max_abs(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !negligible(std::abs(m(i, j)), scale, tol)) return false;
  return true;
}

inline PDecomposition decompose_p(const PGroupElement& p) {
  const GMatrix& m = p.matrix();
  // Elements of P preserve the line e0 and its H-orthogonal span(e0, e1),
  // so they are upper triangular; exp(z1) exp(z2) is unipotent.
  if (!negligible(std::abs(m(2, 1)), max_abs(m)))
    throw std::invalid_argument("decompose_p: matrix is not upper triangular");

  const GMatrix diag = m.diagonal().asDiagonal();
  PDecomposition d;
  d.g0 = PGroupElement(diag);
  const GMatrix n = d.g0.inverse().matrix() * m;

  // exp(z1) exp(z2) = I + z1 + z2 + z1^2/2 with z1^2 having (0,2) entry -|w|^2.
  const Complex w = n(0, 1);
  const double psi = (n(0, 2) + 0.5 * std::norm(w)).imag();
  d.z1 = make_g(0.0, 0.0, w, 0.0, 0.0, 0.0);
  d.z2 = make_g(0.0, 0.0, 0.0, psi, 0.0, 0.0);

  const double err = max_abs(GMatrix(d.recompose().matrix() - m));
  if (!negligible(err, max_abs(m)))
    throw std::invalid_argument("decompose_p: recomposition failed; input is not in P");
  return d;
}

/// The scalar by which Ad(g0) acts on g^{-1}/p = C (the x entry of g_{-1}).
inline Complex g0_to_complex(const PGroupElement& g0) {
  if (!is_grading_preserving(g0)) throw std::invalid_argument("g0_to_complex: element is not in G_0");
  const GMatrix image = ad_g(g0, g_basis()[1]);
  return image(1, 0);
}

}  // namespace crsu2

#endif  // CRSU2_GROUPS_HPP
