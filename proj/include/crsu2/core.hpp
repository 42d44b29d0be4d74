#ifndef CRSU2_CORE_HPP
#define CRSU2_CORE_HPP

// Dense complex linear algebra for su(2) and su(2,1) with the |2|-grading
// used by three dimensional CR geometry.
//
// su(2,1) is realized with respect to the Hermitian form
//   (z, w) = z0 conj(w2) + z2 conj(w0) + z1 conj(w1)
// so that its elements have the shape
//
//   [ a+ib      w     i psi ]
//   [   x     -2ib   -conj(w) ]
//   [ i phi  -conj(x)  -a+ib ]
//
// and the entry (r, c) lives in grading degree c - r.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace crsu2 {

using Complex = std::complex<double>;
using GMatrix = Eigen::Matrix3cd;
using KMatrix = Eigen::Matrix2cd;
using GCoordinates = Eigen::Matrix<double, 8, 1>;

/// Default tolerance for membership and vanishing predicates.
inline constexpr double tol_alg = 1e-10;

inline constexpr int kMinDegree = -2;
inline constexpr int kMaxDegree = 2;

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

/// Mixed absolute/relative test: |value| <= tol * max(1, scale).
inline bool negligible(double value, double scale, double tol = tol_alg) {
  return std::abs(value) <= tol * std::max(1.0, scale);
}

// ---------------------------------------------------------------------------
// su(2)

/// Element (it, z) of su(2), i.e. the matrix [[it, -conj(z)], [z, -it]].
struct KVector {
  double t = 0.0;
  Complex z{0.0, 0.0};

  constexpr KVector() = default;
  constexpr KVector(double t_, Complex z_) : t(t_), z(z_) {}

  static KVector from_coordinates(const Eigen::Vector3d& c) { return {c(0), {c(1), c(2)}}; }

  /// Coordinates (t, Re z, Im z) with respect to E_t, E_u, E_v.
  Eigen::Vector3d coordinates() const { return {t, z.real(), z.imag()}; }

  KMatrix matrix() const {
    KMatrix m;
    m << Complex(0.0, t), -std::conj(z), z, Complex(0.0, -t);
    return m;
  }

  /// Reads (it, z) off a skew-Hermitian traceless matrix.
  static KVector from_matrix(const KMatrix& m) { return {m(0, 0).imag(), m(1, 0)}; }

  double max_abs() const { return std::max(std::abs(t), std::abs(z)); }

  friend KVector operator+(const KVector& a, const KVector& b) { return {a.t + b.t, a.z + b.z}; }
  friend KVector operator-(const KVector& a, const KVector& b) { return {a.t - b.t, a.z - b.z}; }
  friend KVector operator-(const KVector& a) { return {-a.t, -a.z}; }
  friend KVector operator*(double s, const KVector& a) { return {s * a.t, s * a.z}; }
  friend bool operator==(const KVector&, const KVector&) = default;
};

inline KVector bracket(const KVector& x, const KVector& y) {
  const KMatrix a = x.matrix();
  const KMatrix b = y.matrix();
  return KVector::from_matrix(a * b - b * a);
}

/// The contact form alpha(it, z) = t; its kernel is the CR plane H_e.
inline double contact_form(const KVector& x) { return x.t; }

/// The deformed complex structure on H_e:
/// (0, u+iv) -> (0, -v/lambda + i lambda u).
inline KVector j_lambda(double lambda, const KVector& x) {
  if (!(lambda > 0.0)) throw std::invalid_argument("j_lambda: lambda must be positive");
  if (x.t != 0.0) throw std::invalid_argument("j_lambda: argument must lie in H_e (t = 0)");
  return {0.0, {-x.z.imag() / lambda, lambda * x.z.real()}};
}

// ---------------------------------------------------------------------------
// su(2,1)

inline GMatrix bracket(const GMatrix& a, const GMatrix& b) { return a * b - b * a; }

/// Matrix of the invariant Hermitian form of signature (2,1).
inline const GMatrix& form_matrix() {
  static const GMatrix h = [] {
    GMatrix m = GMatrix::Zero();
    m(0, 2) = 1.0;
    m(2, 0) = 1.0;
    m(1, 1) = 1.0;
    return m;
  }();
  return h;
}

inline bool is_in_g(const GMatrix& a, double tol = tol_alg) {
  const double scale = max_abs(a);
  const GMatrix& h = form_matrix();
  return negligible(std::abs(a.trace()), scale, tol) &&
         negligible(max_abs(GMatrix(a.adjoint() * h + h * a)), scale, tol);
}

inline constexpr int entry_degree(int row, int col) { return col - row; }

/// Block of `a` in grading degree `degree`, without any membership check.
inline GMatrix graded_part(const GMatrix& a, int degree) {
  GMatrix r = GMatrix::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (entry_degree(i, j) == degree) r(i, j) = a(i, j);
  return r;
}

struct GradedElement {
  std::array<GMatrix, 5> parts;

  const GMatrix& operator[](int degree) const { return parts.at(degree - kMinDegree); }
  GMatrix sum() const {
    GMatrix s = GMatrix::Zero();
    for (const auto& p : parts) s += p;
    return s;
  }
};

inline GradedElement grade(const GMatrix& a) {
  if (!is_in_g(a)) throw std::invalid_argument("grade: matrix is not in su(2,1)");
  GradedElement g;
  for (int d = kMinDegree; d <= kMaxDegree; ++d) g.parts[d - kMinDegree] = graded_part(a, d);
  return g;
}

/// Largest i with a in g^i; std::nullopt for the zero matrix (which lies in
/// every g^i). The vanishing test of each graded part uses `scale`, by
/// default the max entry of `a`.
inline std::optional<int> filtration_degree(const GMatrix& a, double tol = tol_alg,
                                            std::optional<double> scale = std::nullopt) {
  const double s = scale ? *scale : max_abs(a);
  for (int d = kMinDegree; d <= kMaxDegree; ++d)
    if (!negligible(max_abs(graded_part(a, d)), s, tol)) return d;
  return std::nullopt;
}

inline bool in_filtration(const GMatrix& a, int degree, double tol = tol_alg,
                          std::optional<double> scale = std::nullopt) {
  const auto d = filtration_degree(a, tol, scale);
  return !d || *d >= degree;
}

/// Invariant pairing trace(AB); real on su(2,1).
inline double trace_form(const GMatrix& a, const GMatrix& b) { return (a * b).trace().real(); }

// ---------------------------------------------------------------------------
// Bases

// gBasis indices, degree-major:
//   0      g_{-2}: i at (2,0)
//   1, 2   g_{-1}: x = 1, x = i
//   3, 4   g_0:    a = 1 (real diagonal), b = 1 (imaginary diagonal)
//   5, 6   g_1:    w = 1, w = i
//   7      g_2:    i at (0,2)
inline constexpr std::array<int, 8> kBasisDegree{-2, -1, -1, 0, 0, 1, 1, 2};
inline constexpr int kGMinusBegin = 0;
inline constexpr int kG0Begin = 3;
inline constexpr int kPPlusBegin = 5;

/// Element of su(2,1) from its shape parameters.
inline GMatrix make_g(double a, double b, Complex w, double psi, Complex x, double phi) {
  const Complex i(0.0, 1.0);
  GMatrix m;
  m << Complex(a, b), w, i * psi,
       x, Complex(0.0, -2.0 * b), -std::conj(w),
       i * phi, -std::conj(x), Complex(-a, b);
  return m;
}

/// Coordinates in gBasis; exact for elements of su(2,1).
inline GCoordinates g_coordinates(const GMatrix& m) {
  GCoordinates c;
  c << m(2, 0).imag(), m(1, 0).real(), m(1, 0).imag(), m(0, 0).real(), m(0, 0).imag(),
      m(0, 1).real(), m(0, 1).imag(), m(0, 2).imag();
  return c;
}

inline GMatrix from_g_coordinates(const GCoordinates& c) {
  return make_g(c(3), c(4), {c(5), c(6)}, c(7), {c(1), c(2)}, c(0));
}

/// Coordinates of the g_{-2} + g_{-1} part (basis indices 0..2).
inline Eigen::Vector3d g_minus_coordinates(const GMatrix& m) {
  return g_coordinates(m).head<3>();
}

struct BasisTables {
  std::array<KVector, 3> k_basis;
  std::array<GMatrix, 8> g_basis;
  /// Z^a in g_1 + g_2 with trace_form(Z^a, g_basis[b]) = delta_ab, b = 0..2.
  std::array<GMatrix, 3> p_plus_dual;
};

inline const BasisTables& basis_tables() {
  static const BasisTables tables = [] {
    BasisTables t;
    t.k_basis = {KVector{1.0, 0.0}, KVector{0.0, {1.0, 0.0}}, KVector{0.0, {0.0, 1.0}}};
    for (int i = 0; i < 8; ++i) t.g_basis[i] = from_g_coordinates(GCoordinates::Unit(i));

    // pairing[a][b] = trace_form(g_basis[5 + a], g_basis[b])
    Eigen::Matrix3d pairing;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) pairing(a, b) = trace_form(t.g_basis[kPPlusBegin + a], t.g_basis[b]);
    const Eigen::Matrix3d coeffs = pairing.inverse();
    for (int a = 0; a < 3; ++a) {
      GMatrix z = GMatrix::Zero();
      for (int b = 0; b < 3; ++b) z += coeffs(a, b) * t.g_basis[kPPlusBegin + b];
      t.p_plus_dual[a] = z;
    }
    return t;
  }();
  return tables;
}

inline const std::array<KVector, 3>& k_basis() { return basis_tables().k_basis; }
inline const std::array<GMatrix, 8>& g_basis() { return basis_tables().g_basis; }

/// The basis 2-vectors E_t^E_u, E_t^E_v, E_u^E_v of su(2) (and, by the same
/// index pairs, of g/p).
inline constexpr std::array<std::pair<int, int>, 3> kBasisPairs{{{0, 1}, {0, 2}, {1, 2}}};

/// Coefficients of x^y on kBasisPairs, for coordinate vectors x, y.
inline Eigen::Vector3d wedge_coefficients(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  Eigen::Vector3d w;
  for (int p = 0; p < 3; ++p) {
    const auto [i, j] = kBasisPairs[p];
    w(p) = x(i) * y(j) - x(j) * y(i);
  }
  return w;
}

inline bool in_p(const GMatrix& a, double tol = tol_alg) {
  return is_in_g(a, tol) && in_filtration(a, 0, tol);
}

}  // namespace crsu2

#endif  // CRSU2_CORE_HPP
