#ifndef CRSU2_NORMALIZATION_HPP
#define CRSU2_NORMALIZATION_HPP

// Cochains on g/p with values in g, the Kostant codifferential, homogeneity
// decomposition, and the solver recovering phi_lambda from the curvature
// conditions.
//
// g/p is identified with g_{-2} + g_{-1}, basis xi_0 = g_basis()[0],
// xi_1 = g_basis()[1], xi_2 = g_basis()[2]; Z^a = p_plus_dual[a] is the
// trace-form dual basis of g_1 + g_2.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crsu2/cartan.hpp"
#include "crsu2/core.hpp"

namespace crsu2 {

/// Linear map g/p -> g, stored on xi_0, xi_1, xi_2.
struct Cochain1 {
  std::array<GMatrix, 3> values{GMatrix::Zero(), GMatrix::Zero(), GMatrix::Zero()};

  GMatrix operator()(const Eigen::Vector3d& x) const {
    return x(0) * values[0] + x(1) * values[1] + x(2) * values[2];
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& m : values) r = std::max(r, crsu2::max_abs(m));
    return r;
  }
};

/// Alternating bilinear map g/p x g/p -> g, stored on xi_0^xi_1, xi_0^xi_2,
/// xi_1^xi_2 (kBasisPairs).
struct Cochain2 {
  std::array<GMatrix, 3> values{GMatrix::Zero(), GMatrix::Zero(), GMatrix::Zero()};

  GMatrix operator()(const Eigen::Vector3d& x, const Eigen::Vector3d& y) const {
    const Eigen::Vector3d w = wedge_coefficients(x, y);
    return w(0) * values[0] + w(1) * values[1] + w(2) * values[2];
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& m : values) r = std::max(r, crsu2::max_abs(m));
    return r;
  }

  friend Cochain2 operator+(const Cochain2& a, const Cochain2& b) {
    Cochain2 r;
    for (int p = 0; p < 3; ++p) r.values[p] = a.values[p] + b.values[p];
    return r;
  }
};

/// Grading degree of the slot pair kBasisPairs[p] in g/p: -3 or -2.
inline constexpr int slot_degree(int p) {
  return kBasisDegree[kBasisPairs[p].first] + kBasisDegree[kBasisPairs[p].second];
}

/// Transfers kappa from su(2) to g/p through the isomorphism induced by phi.
inline Cochain2 curvature_to_cochain(const CurvatureForm& kappa, const PhiMap& phi) {
  const Eigen::Matrix3d q = phi.quotient_matrix();
  const double scale = phi.max_abs();
  if (negligible(q.determinant(), scale * scale * scale))
    throw std::domain_error("curvature_to_cochain: phi does not induce an isomorphism onto g/p");
  const Eigen::Matrix3d qinv = q.inverse();
  Cochain2 psi;
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = kBasisPairs[p];
    psi.values[p] = kappa(KVector::from_coordinates(qinv.col(a)), KVector::from_coordinates(qinv.col(b)));
  }
  return psi;
}

/// Inverse of curvature_to_cochain.
inline CurvatureForm cochain_to_curvature(const Cochain2& psi, const PhiMap& phi) {
  const Eigen::Matrix3d q = phi.quotient_matrix();
  CurvatureForm kappa;
  for (int p = 0; p < 3; ++p) {
    const auto [i, j] = kBasisPairs[p];
    kappa.values[p] = psi(q.col(i), q.col(j));
  }
  return kappa;
}

/// (d* psi)(X) = sum_a [Z^a, psi(X, xi_a)] - 1/2 sum_a psi(pr([Z^a, X]), xi_a)
/// where pr is the projection to g_{-2} + g_{-1}.
inline Cochain1 kostant_codiff2(const Cochain2& psi) {
  const auto& tables = basis_tables();
  Cochain1 out;
  for (int c = 0; c < 3; ++c) {
    const Eigen::Vector3d x = Eigen::Vector3d::Unit(c);
    GMatrix s = GMatrix::Zero();
    for (int a = 0; a < 3; ++a) {
      const Eigen::Vector3d xa = Eigen::Vector3d::Unit(a);
      const GMatrix& z = tables.p_plus_dual[a];
      s += bracket(z, psi(x, xa));
      s -= 0.5 * psi(g_minus_coordinates(bracket(z, tables.g_basis[c])), xa);
    }
    out.values[c] = s;
  }
  return out;
}

/// (d* phi) = sum_a [Z^a, phi(xi_a)].
inline GMatrix kostant_codiff1(const Cochain1& phi) {
  const auto& tables = basis_tables();
  GMatrix s = GMatrix::Zero();
  for (int a = 0; a < 3; ++a) s += bracket(tables.p_plus_dual[a], phi.values[a]);
  return s;
}

inline constexpr int kMinHomogeneity = 0;
inline constexpr int kMaxHomogeneity = 5;

/// Component l maps the slot g_i x g_j into g_{i+j+l}; index = l.
inline std::array<Cochain2, 6> homogeneity_components(const Cochain2& psi) {
  std::array<Cochain2, 6> out;
  for (int l = kMinHomogeneity; l <= kMaxHomogeneity; ++l)
    for (int p = 0; p < 3; ++p) out[l].values[p] = graded_part(psi.values[p], slot_degree(p) + l);
  return out;
}

/// All homogeneity components of degree <= 0 vanish.
inline bool is_regular(const Cochain2& psi, double tol = tol_alg) {
  const auto parts = homogeneity_components(psi);
  return negligible(parts[0].max_abs(), psi.max_abs(), tol);
}

inline bool is_normal(const Cochain2& psi, double tol) { return kostant_codiff2(psi).max_abs() < tol; }

/// The degree-4 cochain xi_0 ^ x -> (g_1 element with w = c * x), complex
/// linear in the g_{-1} argument x (x = 1 on xi_1, x = i on xi_2), zero on
/// xi_1^xi_2. With `antilinear` the g_1 value uses conj(x) instead.
inline Cochain2 degree4_cochain(Complex c, bool antilinear = false) {
  const auto g1 = [](Complex w) { return make_g(0.0, 0.0, w, 0.0, 0.0, 0.0); };
  const Complex one(1.0, 0.0);
  const Complex i(0.0, 1.0);
  Cochain2 psi;
  psi.values[0] = g1(c * one);
  psi.values[1] = g1(c * (antilinear ? std::conj(i) : i));
  return psi;
}

// ---------------------------------------------------------------------------
// Solver

/// Gauge-fixed ansatz for phi(it, u+iv): the g_{-2} + g_{-1} part is pinned
/// to it at (2,0) and sqrt(lambda) u + i v / sqrt(lambda) at (1,0); the
/// g_0 + g_1 + g_2 parts are unknown except the real-diagonal g_0
/// coefficient of phi(E_t), which the exp(g_2) gauge sets to zero.
struct SolverAnsatz {
  static constexpr int kUnknowns = 14;
  static constexpr int kEquations = 18;
  using Unknowns = Eigen::Matrix<double, kUnknowns, 1>;
  using Residual = Eigen::Matrix<double, kEquations, 1>;
  using Jacobian = Eigen::Matrix<double, kEquations, kUnknowns>;

  struct Slot {
    int image;  // 0, 1, 2 for E_t, E_u, E_v
    int basis;  // gBasis index
  };

  // E_t: b, w.re, w.im, psi; E_u and E_v: a, b, w.re, w.im, psi.
  static constexpr std::array<Slot, kUnknowns> kSlots{{{0, 4}, {0, 5}, {0, 6}, {0, 7},
                                                       {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7},
                                                       {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}}};

  double lambda = 1.0;
  Unknowns unknowns = Unknowns::Zero();

  /// Homogeneity of an unknown: its grading degree minus the slot degree of
  /// the basis vector it belongs to (E_t -> -2, E_u, E_v -> -1).
  static constexpr int unknown_homogeneity(int k) {
    return kBasisDegree[kSlots[k].basis] + (kSlots[k].image == 0 ? 2 : 1);
  }

  // Equations: for each pair p, the g_{-2}, g_{-1}, g_0 coordinates of
  // kappa (rows 5p .. 5p+4); then the g_1, g_2 coordinates of kappa(E_u, E_v)
  // (rows 15 .. 17).
  static constexpr int equation_pair(int row) { return row < 15 ? row / 5 : 2; }
  static constexpr int equation_coordinate(int row) { return row < 15 ? row % 5 : row - 10; }
  static constexpr int equation_homogeneity(int row) {
    return kBasisDegree[equation_coordinate(row)] - (equation_pair(row) == 2 ? -2 : -3);
  }

  std::array<GMatrix, 3> pinned_images() const {
    const double sl = std::sqrt(lambda);
    const auto& g = g_basis();
    return {GMatrix(g[0]), GMatrix(sl * g[1]), GMatrix(g[2] / sl)};
  }

  PhiMap recompose() const {
    auto images = pinned_images();
    const auto& g = g_basis();
    for (int k = 0; k < kUnknowns; ++k) images[kSlots[k].image] += unknowns(k) * g[kSlots[k].basis];
    return PhiMap(images, lambda);
  }

  /// The ansatz coordinates of an arbitrary map (its pinned part is ignored).
  static SolverAnsatz from_phi(const PhiMap& phi, double lambda) {
    SolverAnsatz a;
    a.lambda = lambda;
    for (int k = 0; k < kUnknowns; ++k) a.unknowns(k) = g_coordinates(phi.image(kSlots[k].image))(kSlots[k].basis);
    return a;
  }
};

inline SolverAnsatz::Residual constraint_residual(const SolverAnsatz& ansatz) {
  const CurvatureForm kappa = curvature(ansatz.recompose());
  SolverAnsatz::Residual r;
  for (int row = 0; row < SolverAnsatz::kEquations; ++row)
    r(row) = g_coordinates(kappa.values[SolverAnsatz::equation_pair(row)])(SolverAnsatz::equation_coordinate(row));
  return r;
}

/// Exact Jacobian: d kappa(X, Y) = [d phi X, phi Y] + [phi X, d phi Y] - d phi [X, Y].
inline SolverAnsatz::Jacobian constraint_jacobian(const SolverAnsatz& ansatz) {
  const PhiMap phi = ansatz.recompose();
  const auto& e = k_basis();
  const auto& g = g_basis();
  SolverAnsatz::Jacobian jac;
  for (int k = 0; k < SolverAnsatz::kUnknowns; ++k) {
    const auto slot = SolverAnsatz::kSlots[k];
    std::array<GMatrix, 3> dimages{GMatrix::Zero(), GMatrix::Zero(), GMatrix::Zero()};
    dimages[slot.image] = g[slot.basis];
    const PhiMap dphi(dimages);
    std::array<GCoordinates, 3> dk;
    for (int p = 0; p < 3; ++p) {
      const auto [i, j] = kBasisPairs[p];
      const GMatrix d = bracket(dphi(e[i]), phi(e[j])) + bracket(phi(e[i]), dphi(e[j])) - dphi(bracket(e[i], e[j]));
      dk[p] = g_coordinates(d);
    }
    for (int row = 0; row < SolverAnsatz::kEquations; ++row)
      jac(row, k) = dk[SolverAnsatz::equation_pair(row)](SolverAnsatz::equation_coordinate(row));
  }
  return jac;
}

struct SolverOptions {
  int max_iterations = 50;
  double residual_tolerance = 1e-12;
  /// Singular values below rank_tolerance * sigma_max count as rank loss.
  double rank_tolerance = 1e-8;
  bool staged_fallback = true;
};

struct SolverResult {
  PhiMap phi;
  SolverAnsatz ansatz;
  int iterations = 0;
  double residual = 0.0;
  int jacobian_rank = 0;
  bool used_fallback = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Solves each homogeneity level in turn. Level-l equations are affine in
/// the level-l unknowns once lower levels are fixed, so each stage is one
/// linear least-squares solve.
inline SolverAnsatz solve_staged(double lambda) {
  SolverAnsatz a;
  a.lambda = lambda;
  for (int level = 1; level <= 4; ++level) {
    std::vector<int> cols;
    std::vector<int> rows;
    for (int k = 0; k < SolverAnsatz::kUnknowns; ++k)
      if (SolverAnsatz::unknown_homogeneity(k) == level) cols.push_back(k);
    for (int r = 0; r < SolverAnsatz::kEquations; ++r)
      if (SolverAnsatz::equation_homogeneity(r) == level) rows.push_back(r);
    const auto res = constraint_residual(a);
    const auto jac = constraint_jacobian(a);
    Eigen::MatrixXd sub(rows.size(), cols.size());
    Eigen::VectorXd rhs(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rhs(i) = -res(rows[i]);
      for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = jac(rows[i], cols[j]);
    }
    const Eigen::VectorXd step = sub.colPivHouseholderQr().solve(rhs);
    for (std::size_t j = 0; j < cols.size(); ++j) a.unknowns(cols[j]) += step(j);
  }
  return a;
}

namespace detail {

inline int newton(SolverAnsatz& a, const SolverOptions& opts, int budget) {
  int it = 0;
  double norm = constraint_residual(a).norm();
  for (; it < budget; ++it) {
    const auto r = constraint_residual(a);
    if (r.cwiseAbs().maxCoeff() < opts.residual_tolerance) break;
    const SolverAnsatz::Unknowns step = constraint_jacobian(a).colPivHouseholderQr().solve(-r);
    // backtrack on the residual norm
    double t = 1.0;
    SolverAnsatz trial = a;
    for (int halvings = 0; halvings < 30; ++halvings, t *= 0.5) {
      trial.unknowns = a.unknowns + t * step;
      if (constraint_residual(trial).norm() < norm) break;
    }
    a = trial;
    norm = constraint_residual(a).norm();
  }
  return it;
}

}  // namespace detail

/// Recovers phi_lambda from: curvature values in g^1 and vanishing on
/// H_e x H_e, within the gauge-fixed ansatz.
inline SolverResult solve_phi(double lambda, const std::optional<SolverAnsatz::Unknowns>& init = std::nullopt,
                              const SolverOptions& opts = {}) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_phi: lambda must be positive");
  SolverResult result;
  SolverAnsatz a;
  a.lambda = lambda;
  if (init) a.unknowns = *init;

  int iterations = detail::newton(a, opts, opts.max_iterations);
  double residual = constraint_residual(a).cwiseAbs().maxCoeff();
  if (!(residual < opts.residual_tolerance) && opts.staged_fallback) {
    a = solve_staged(lambda);
    iterations += detail::newton(a, opts, opts.max_iterations);
    residual = constraint_residual(a).cwiseAbs().maxCoeff();
    result.used_fallback = true;
  }
  if (!(residual < opts.residual_tolerance))
    throw SolverError("solve_phi: no convergence (residual " + std::to_string(residual) + " after " +
                          std::to_string(iterations) + " iterations)",
                      iterations, residual);

  Eigen::JacobiSVD<SolverAnsatz::Jacobian> svd(constraint_jacobian(a));
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > opts.rank_tolerance * sv(0)) ++rank;
  if (rank < SolverAnsatz::kUnknowns)
    throw SolverError("solve_phi: solution is not isolated (Jacobian rank " + std::to_string(rank) + ")",
                      iterations, residual);

  result.ansatz = a;
  result.phi = a.recompose();
  result.iterations = iterations;
  result.residual = residual;
  result.jacobian_rank = rank;
  return result;
}

}  // namespace crsu2

#endif  // CRSU2_NORMALIZATION_HPP
