// Prints phi_lambda, its curvature on (E_t, E_u), and the obstruction
// magnitude for a few lambda, then rederives phi_2 with the solver.

#include <cstdio>
#include <iostream>

#include "crsu2/crsu2.hpp"

using namespace crsu2;

namespace {

void print_matrix(const char* label, const GMatrix& m) {
  std::printf("%s\n", label);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) std::printf("  %8.4f%+8.4fi", m(r, c).real(), m(r, c).imag());
    std::printf("\n");
  }
}

}  // namespace

int main() {
  for (double lambda : {1.0, 2.0}) {
    std::printf("lambda = %g\n", lambda);
    const PhiMap phi = phi_closed_form(lambda);
    print_matrix("phi(E_t)", phi.image(0));
    const CurvatureForm kappa = curvature(phi);
    print_matrix("kappa(E_t, E_u)", kappa.values[0]);
    std::printf("\n");
  }

  std::printf("%8s %14s %14s\n", "lambda", "obstruction", "|d* kappa|");
  for (double lambda : {0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0}) {
    const PhiMap phi = phi_closed_form(lambda);
    const CurvatureForm kappa = curvature(phi);
    const double obstruction = std::abs(harmonic_curvature(kappa).coefficient());
    const double codiff = kostant_codiff2(curvature_to_cochain(kappa, phi)).max_abs();
    std::printf("%8.3f %14.6f %14.2e\n", lambda, obstruction, codiff);
  }

  const SolverResult r = solve_phi(2.0);
  double dev = 0.0;
  for (int i = 0; i < 3; ++i) dev = std::max(dev, max_abs(GMatrix(r.phi.image(i) - phi_closed_form(2.0).image(i))));
  std::printf("\nsolver at lambda = 2: %d iterations, residual %.1e, deviation from closed form %.1e\n",
              r.iterations, r.residual, dev);
  return 0;
}
