#ifndef CRSU2_VERIFICATION_HPP
#define CRSU2_VERIFICATION_HPP

// Invariant suites over all modules, as CheckRecords. Each suite draws its
// samples from the Rng it is given, so a fixed seed reproduces a report.

#include <cstdio>
#include <string>
#include <vector>

#include "crsu2/cartan.hpp"
#include "crsu2/core.hpp"
#include "crsu2/groups.hpp"
#include "crsu2/normalization.hpp"
#include "crsu2/random.hpp"
#include "crsu2/report.hpp"
#include "crsu2/tractor.hpp"

namespace crsu2 {

struct VerifyOptions {
  SolverOptions solver;
  double fd_step = kDefaultFdStep;
  int transport_steps = 1000;
  /// Scales every tolerance of the suites (1 = as specified).
  double tolerance_scale = 1.0;
};

inline std::string lambda_label(double lambda) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "lambda=%.17g", lambda);
  return buf;
}

/// Sum of ad_A^n(B) / n!, truncated once terms stop contributing.
inline GMatrix exp_ad_series(const GMatrix& a, const GMatrix& b) {
  GMatrix term = b;
  GMatrix sum = b;
  for (int n = 1; n < 200; ++n) {
    term = bracket(a, term) / static_cast<double>(n);
    sum += term;
    if (max_abs(term) < 1e-18 * std::max(1.0, max_abs(sum))) break;
  }
  return sum;
}

inline std::vector<CheckRecord> algebra_suite(Rng& rng, const VerifyOptions& opt = {}) {
  const double ts = opt.tolerance_scale;
  std::vector<CheckRecord> out;
  const auto& g = g_basis();

  double jk = 0.0;
  double jg = 0.0;
  double closure = 0.0;
  for (int n = 0; n < 200; ++n) {
    const KVector x = rng.k_vector(), y = rng.k_vector(), z = rng.k_vector();
    const KVector cyc = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    jk = std::max(jk, cyc.max_abs() / std::max(1.0, x.max_abs() * y.max_abs() * z.max_abs()));

    const GMatrix a = rng.g_element(), b = rng.g_element(), c = rng.g_element();
    const GMatrix cg = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    jg = std::max(jg, max_abs(cg) / std::max(1.0, max_abs(a) * max_abs(b) * max_abs(c)));

    const GMatrix ab = bracket(a, b);
    const GMatrix& h = form_matrix();
    const double defect = std::max(std::abs(ab.trace()), max_abs(GMatrix(ab.adjoint() * h + h * ab)));
    closure = std::max(closure, defect / std::max(1.0, max_abs(a) * max_abs(b)));
  }
  out.push_back(CheckRecord::below("algebra.jacobi_k", "200 random triples", jk, 1e-12 * ts));
  out.push_back(CheckRecord::below("algebra.jacobi_g", "200 random triples", jg, 1e-12 * ts));
  out.push_back(CheckRecord::below("algebra.closure", "200 random pairs", closure, 1e-10 * ts));

  double grading = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const GMatrix b = bracket(g[i], g[j]);
      const int target = kBasisDegree[i] + kBasisDegree[j];
      grading = std::max(grading, max_abs(GMatrix(b - graded_part(b, target))));
    }
  out.push_back(CheckRecord::below("algebra.grading_compatibility", "gBasis pairs", grading, 1e-12 * ts));

  // g_{-1} x g_{-1} -> g_{-2}
  Eigen::Matrix2d induced;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) induced(a, b) = g_coordinates(bracket(g[1 + a], g[1 + b]))(0);
  out.push_back(CheckRecord::above("algebra.induced_bracket_nondegenerate", "g_-1 basis", std::abs(induced.determinant()),
                                   1e-8));

  double dual = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      dual = std::max(dual, std::abs(trace_form(basis_tables().p_plus_dual[a], g[b]) - (a == b ? 1.0 : 0.0)));
  out.push_back(CheckRecord::below("algebra.dual_pairing", "pPlusDual", dual, 1e-13 * ts));

  double orth = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (kBasisDegree[i] + kBasisDegree[j] != 0) orth = std::max(orth, std::abs(trace_form(g[i], g[j])));
  out.push_back(CheckRecord::below("algebra.trace_form_grading", "gBasis pairs", orth, 1e-13 * ts));
  return out;
}

inline std::vector<CheckRecord> group_suite(Rng& rng, const VerifyOptions& opt = {}) {
  const double ts = opt.tolerance_scale;
  std::vector<CheckRecord> out;
  const auto& g = g_basis();

  double adexp = 0.0;
  double filt = 0.0;
  double roundtrip = 0.0;
  double unique = 0.0;
  for (int n = 0; n < 100; ++n) {
    const GMatrix a = rng.p_element();
    const GMatrix b = rng.g_element();
    const PGroupElement p = exp_p(a);
    const GMatrix lhs = ad_g(p, b);
    adexp = std::max(adexp, max_abs(GMatrix(lhs - exp_ad_series(a, b))) / std::max(1.0, max_abs(lhs)));

    for (int i = 0; i < 8; ++i) {
      const GMatrix image = ad_g(p, g[i]);
      const double scale = std::max(1.0, max_abs(image));
      for (int d = kMinDegree; d < kBasisDegree[i]; ++d) filt = std::max(filt, max_abs(graded_part(image, d)) / scale);
    }

    const PDecomposition dec = decompose_p(p);
    roundtrip = std::max(roundtrip, max_abs(GMatrix(dec.recompose().matrix() - p.matrix())) / max_abs(p.matrix()));

    // decompose the product of known factors
    const GMatrix g0gen = graded_part(rng.p_element(), 0);
    const GMatrix z1 = graded_part(rng.p_element(), 1);
    const GMatrix z2 = graded_part(rng.p_element(), 2);
    const PDecomposition known{exp_p(g0gen), z1, z2};
    const PDecomposition back = decompose_p(known.recompose());
    unique = std::max({unique, max_abs(GMatrix(back.g0.matrix() - known.g0.matrix())), max_abs(GMatrix(back.z1 - z1)),
                       max_abs(GMatrix(back.z2 - z2))});
  }
  out.push_back(CheckRecord::below("groups.ad_exp_equals_exp_ad", "100 random (A in p, B in g)", adexp, 1e-9 * ts));
  out.push_back(CheckRecord::below("groups.ad_filtration_preservation", "100 random p x gBasis", filt, 1e-9 * ts));
  out.push_back(CheckRecord::below("groups.decompose_recompose", "100 random p", roundtrip, 1e-9 * ts));
  out.push_back(CheckRecord::below("groups.decompose_uniqueness", "100 random (g0, Z1, Z2)", unique, 1e-9 * ts));

  double kinv = 0.0;
  double kderiv = 0.0;
  double hom = 0.0;
  const double h = 1e-5;
  for (int n = 0; n < 100; ++n) {
    const KGroupElement k = rng.k_group();
    const KVector x = rng.k_vector();
    const KVector y = rng.k_vector();
    kinv = std::max(kinv, (ad_k(k, ad_k(k.inverse(), x)) - x).max_abs());
    const KVector fd = (1.0 / (2.0 * h)) * (ad_k(exp_k(h * y), x) - ad_k(exp_k(-h * y), x));
    kderiv = std::max(kderiv, (fd - bracket(y, x)).max_abs());

    const PGroupElement a = exp_p(graded_part(rng.p_element(), 0));
    const PGroupElement b = exp_p(graded_part(rng.p_element(), 0));
    hom = std::max(hom, std::abs(g0_to_complex(a * b) - g0_to_complex(a) * g0_to_complex(b)));
  }
  out.push_back(CheckRecord::below("groups.ad_k_inverse", "100 random (k, X)", kinv, 1e-12 * ts));
  out.push_back(CheckRecord::below("groups.ad_k_derivative", "100 random (Y, X), h=1e-5", kderiv, 1e-8 * ts));
  out.push_back(CheckRecord::below("groups.g0_homomorphism", "100 random pairs in G_0", hom, 1e-12 * ts));
  return out;
}

inline std::vector<CheckRecord> cartan_suite(double lambda, Rng& rng, const VerifyOptions& opt = {}) {
  const double ts = opt.tolerance_scale;
  const std::string in = lambda_label(lambda);
  std::vector<CheckRecord> out;
  const PhiMap phi = phi_closed_form(lambda);
  const auto& e = k_basis();

  out.push_back(CheckRecord::below("cartan.phi_invariants", in, phi.satisfies_invariants() ? 0.0 : 1.0, 0.5));

  // j_lambda on H_e: squares to -1 and preserves the Levi form alpha([X, Y]).
  double jdefect = 0.0;
  for (int n = 0; n < 50; ++n) {
    const KVector x{0.0, {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    const KVector y{0.0, {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    const KVector jx = j_lambda(lambda, x);
    const KVector jy = j_lambda(lambda, y);
    jdefect = std::max(jdefect, (j_lambda(lambda, jx) + x).max_abs());
    jdefect = std::max(jdefect, std::abs(contact_form(bracket(jx, jy)) - contact_form(bracket(x, y))));
  }
  out.push_back(CheckRecord::below("cartan.j_lambda_complex_isometry", in, jdefect, 1e-12 * ts));

  const InducedCrStructure cr = induced_cr_structure(phi);
  Eigen::Matrix2d jl;
  jl << 0.0, -1.0 / lambda, lambda, 0.0;
  out.push_back(CheckRecord::below("cartan.induced_cr_structure", in, max_abs(Eigen::Matrix2d(cr.complex_structure - jl)),
                                   1e-12 * ts));

  const CurvatureForm kappa = curvature(phi);
  const CurvatureForm closed = curvature_closed_form(lambda);
  double below_g1 = 0.0;
  double oracle = 0.0;
  for (int p = 0; p < 3; ++p) {
    const auto [i, j] = kBasisPairs[p];
    const double scale = std::max(1.0, max_abs(phi.image(i)) * max_abs(phi.image(j)));
    for (int d = kMinDegree; d < 1; ++d) below_g1 = std::max(below_g1, max_abs(graded_part(kappa.values[p], d)) / scale);
    oracle = std::max(oracle, max_abs(GMatrix(kappa.values[p] - closed.values[p])) /
                                  std::max(1.0, max_abs(closed.values[p])));
  }
  const double he_scale = std::max(1.0, max_abs(phi.image(1)) * max_abs(phi.image(2)));
  out.push_back(CheckRecord::below("cartan.curvature_in_g1", in, below_g1, 1e-10 * ts));
  out.push_back(CheckRecord::below("cartan.curvature_vanishes_on_He", in, max_abs(kappa.values[2]) / he_scale, 1e-10 * ts));
  out.push_back(CheckRecord::below("cartan.closed_form_matches_brackets", in, oracle, 1e-9 * ts));

  const HarmonicCurvature hc = harmonic_curvature(kappa);
  const double obstruction = std::abs(hc.coefficient());
  if (lambda == 1.0) {
    out.push_back(CheckRecord::below("cartan.harmonic_curvature_zero", in, obstruction, 1e-12 * ts));
    double hom = 0.0;
    for (int p = 0; p < 3; ++p) hom = std::max(hom, max_abs(kappa.values[p]));
    out.push_back(CheckRecord::below("cartan.phi_is_homomorphism", in, hom, 1e-12 * ts));
  } else {
    out.push_back(CheckRecord::above("cartan.harmonic_curvature_nonzero", in, obstruction, 1e-12));
  }
  const double expected = obstruction_magnitude_closed_form(lambda);
  out.push_back(CheckRecord::below("cartan.harmonic_matches_formula", in,
                                   std::abs(obstruction - expected) / std::max(1.0, expected), 1e-9 * ts));

  double fundamental = 0.0;
  double equivariance = 0.0;
  for (int n = 0; n < 100; ++n) {
    const PGroupElement g = rng.p_group();
    const PGroupElement hh = rng.p_group();
    const GMatrix a = rng.p_element();
    const KVector x = rng.k_vector();
    fundamental = std::max(fundamental, max_abs(GMatrix(omega_eval(phi, g, KVector{}, a) - a)));
    const GMatrix lhs = omega_eval(phi, g * hh, x, ad_g(hh.inverse(), a));
    const GMatrix rhs = ad_g(hh.inverse(), omega_eval(phi, g, x, a));
    equivariance = std::max(equivariance, max_abs(GMatrix(lhs - rhs)) / std::max(1.0, max_abs(rhs)));
  }
  out.push_back(CheckRecord::below("cartan.omega_fundamental_field", in, fundamental, 1e-10 * ts));
  out.push_back(CheckRecord::below("cartan.omega_equivariance", in, equivariance, 1e-10 * ts));

  double min_conditioning = 1.0;
  for (int n = 0; n < 20; ++n) {
    const PGroupElement g = rng.p_group();
    Eigen::Matrix<double, 8, 8> m;
    for (int c = 0; c < 3; ++c) m.col(c) = g_coordinates(omega_eval(phi, g, e[c], GMatrix::Zero()));
    for (int c = 0; c < 5; ++c) m.col(3 + c) = g_coordinates(omega_eval(phi, g, KVector{}, g_basis()[kG0Begin + c]));
    Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(m);
    const auto& sv = svd.singularValues();
    min_conditioning = std::min(min_conditioning, sv(7) / sv(0));
  }
  out.push_back(CheckRecord::above("cartan.omega_isomorphism", in + ", 20 random g", min_conditioning, 1e-12));
  return out;
}

inline std::vector<CheckRecord> normalization_suite(double lambda, Rng& rng, const VerifyOptions& opt = {}) {
  const double ts = opt.tolerance_scale;
  const std::string in = lambda_label(lambda);
  std::vector<CheckRecord> out;
  const PhiMap phi = phi_closed_form(lambda);
  const Cochain2 psi = curvature_to_cochain(curvature(phi), phi);

  out.push_back(CheckRecord::below("normalization.codifferential_of_curvature", in, kostant_codiff2(psi).max_abs(),
                                   1e-9 * ts));
  out.push_back(CheckRecord::below("normalization.curvature_regular", in, is_regular(psi) ? 0.0 : 1.0, 0.5));
  const auto parts = homogeneity_components(psi);
  double low = 0.0;
  for (int l = 0; l < 4; ++l) low = std::max(low, parts[l].max_abs());
  out.push_back(CheckRecord::below("normalization.homogeneity_at_least_4", in, low / std::max(1.0, psi.max_abs()),
                                   1e-10 * ts));

  double dd = 0.0;
  for (int n = 0; n < 100; ++n) {
    Cochain2 c;
    for (auto& v : c.values) v = rng.g_element();
    dd = std::max(dd, max_abs(kostant_codiff1(kostant_codiff2(c))) / std::max(1.0, c.max_abs()));
  }
  out.push_back(CheckRecord::below("normalization.codifferential_squares_to_zero", "100 random cochains", dd, 1e-10 * ts));

  const double harmonic = std::max(kostant_codiff2(degree4_cochain({1.0, 0.0})).max_abs(),
                                   kostant_codiff2(degree4_cochain({0.0, 1.0})).max_abs());
  out.push_back(CheckRecord::below("normalization.degree4_complex_linear_in_kernel", "w = c x, c in {1, i}", harmonic,
                                   1e-10 * ts));

  try {
    const SolverResult r = solve_phi(lambda, std::nullopt, opt.solver);
    double dev = 0.0;
    for (int i = 0; i < 3; ++i) dev = std::max(dev, max_abs(GMatrix(r.phi.image(i) - phi.image(i))));
    out.push_back(CheckRecord::below("normalization.solver_matches_closed_form", in, dev, 1e-8 * ts));
    out.push_back(CheckRecord::below("normalization.solver_residual", in, r.residual, opt.solver.residual_tolerance));
    out.push_back(CheckRecord::below("normalization.solver_iterations", in, r.iterations, opt.solver.max_iterations + 1));
    const InducedCrStructure cr = induced_cr_structure(r.phi);
    Eigen::Matrix2d jl;
    jl << 0.0, -1.0 / lambda, lambda, 0.0;
    out.push_back(CheckRecord::below("normalization.solver_cr_structure", in,
                                     max_abs(Eigen::Matrix2d(cr.complex_structure - jl)), 1e-12 * ts));
  } catch (const SolverError& err) {
    out.push_back(CheckRecord::below("normalization.solver_matches_closed_form", in + " (" + err.what() + ")",
                                     err.residual(), 0.0));
  }
  return out;
}

inline std::vector<CheckRecord> tractor_suite(double lambda, Rng& rng, const VerifyOptions& opt = {}) {
  const double ts = opt.tolerance_scale;
  const std::string in = lambda_label(lambda);
  std::vector<CheckRecord> out;

  double rep_std = 0.0;
  double rep_adj = 0.0;
  for (int n = 0; n < 100; ++n) {
    const GMatrix a = rng.g_element();
    const GMatrix b = rng.g_element();
    const Eigen::Vector3cd v(Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                             Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    const GMatrix c = rng.g_element();
    using S = StandardRepresentation;
    using A = AdjointRepresentation;
    rep_std = std::max(rep_std, max_abs(Eigen::Vector3cd(S::act(bracket(a, b), v) - S::act(a, S::act(b, v)) +
                                                         S::act(b, S::act(a, v)))));
    rep_adj = std::max(rep_adj, max_abs(GMatrix(A::act(bracket(a, b), c) - A::act(a, A::act(b, c)) +
                                                A::act(b, A::act(a, c)))));
  }
  out.push_back(CheckRecord::below("tractor.standard_is_representation", "100 random pairs", rep_std, 1e-11 * ts));
  out.push_back(CheckRecord::below("tractor.adjoint_is_representation", "100 random pairs", rep_adj, 1e-11 * ts));

  const double h = opt.fd_step;
  double automorphism = 0.0;
  double lie = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
  for (int n = 0; n < 50; ++n) {
    const KVector x = rng.k_vector();
    const KVector y = rng.k_vector();
    const KGroupElement k = rng.k_group();
    automorphism = std::max(automorphism, infinitesimal_automorphism_check(lambda, x, y, k, h));
    lie = std::max(lie, lie_derivative_identity_check(lambda, y, x, h));
    coarse += lie_derivative_identity_check(lambda, y, x, 1e-2);
    fine += lie_derivative_identity_check(lambda, y, x, 5e-3);
  }
  out.push_back(CheckRecord::below("tractor.infinitesimal_automorphism", in + ", 50 random (X, Y, k)", automorphism,
                                   1e-6 * ts));
  out.push_back(CheckRecord::below("tractor.lie_derivative_identity", in + ", 50 random (Y, Z)", lie, 1e-6 * ts));
  out.push_back(CheckRecord::below("tractor.finite_difference_order", in + ", h=1e-2 vs 5e-3",
                                   std::abs(coarse / fine - 4.0) / 4.0, 0.2));

  const int steps = opt.transport_steps;
  const KVector et{1.0, 0.0};
  const Eigen::Vector3cd v0(Complex(0.3, -0.2), Complex(0.5, 0.1), Complex(-0.4, 0.7));
  const Eigen::Vector3cd w0(Complex(-0.6, 0.2), Complex(0.1, 0.9), Complex(0.2, -0.3));
  const auto rk = parallel_transport<StandardRepresentation>(lambda, et, v0, 1.0, steps);
  out.push_back(CheckRecord::below("tractor.transport_matches_exponential", in + ", X=(i,0), s=1",
                                   max_abs(Eigen::Vector3cd(rk - exact_transport_standard(lambda, et, v0, 1.0))),
                                   1e-10 * ts));

  const GMatrix b0 = rng.g_element();
  const auto rka = parallel_transport<AdjointRepresentation>(lambda, et, b0, 1.0, steps);
  out.push_back(CheckRecord::below("tractor.adjoint_transport_matches_exponential", in + ", X=(i,0), s=1",
                                   max_abs(GMatrix(rka - exact_transport_adjoint(lambda, et, b0, 1.0))), 1e-10 * ts));

  const double two_pi = 2.0 * std::acos(-1.0);
  const auto pv = transport_path<StandardRepresentation>(lambda, et, v0, two_pi, steps);
  const auto pw = transport_path<StandardRepresentation>(lambda, et, w0, two_pi, steps);
  const Complex h0 = hermitian_pairing(v0, w0);
  double drift = 0.0;
  for (std::size_t i = 0; i < pv.size(); ++i) drift = std::max(drift, std::abs(hermitian_pairing(pv[i], pw[i]) - h0));
  out.push_back(CheckRecord::below("tractor.transport_preserves_hermitian_form", in + ", s in [0, 2pi]", drift,
                                   1e-8 * ts));
  return out;
}

/// Every suite, λ-independent ones once, then each λ in order.
inline Report run_verification(const std::vector<double>& lambdas, std::uint64_t seed, const VerifyOptions& opt = {}) {
  for (double l : lambdas)
    if (!(l > 0.0)) throw std::invalid_argument("run_verification: lambda values must be positive");
  Rng rng(seed);
  Report report;
  report.append(algebra_suite(rng, opt));
  report.append(group_suite(rng, opt));
  for (double l : lambdas) {
    report.append(cartan_suite(l, rng, opt));
    report.append(normalization_suite(l, rng, opt));
    report.append(tractor_suite(l, rng, opt));
  }
  return report;
}

}  // namespace crsu2

#endif  // CRSU2_VERIFICATION_HPP
