#ifndef CRSU2_RANDOM_HPP
#define CRSU2_RANDOM_HPP

// Seeded samplers for property tests and verification suites. Output is
// identical on every platform: mt19937_64 is fully specified and the
// uniform mapping below avoids the implementation-defined distributions.

#include <cmath>
#include <cstdint>
#include <random>

#include "crsu2/core.hpp"
#include "crsu2/groups.hpp"

namespace crsu2 {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  KVector k_vector(double amplitude = 1.0) {
    return {uniform(-amplitude, amplitude), {uniform(-amplitude, amplitude), uniform(-amplitude, amplitude)}};
  }

  /// Element of su(2,1) with gBasis coordinates uniform in [-amplitude, amplitude].
  GMatrix g_element(double amplitude = 1.0) {
    GCoordinates c;
    for (int i = 0; i < 8; ++i) c(i) = uniform(-amplitude, amplitude);
    return from_g_coordinates(c);
  }

  GMatrix p_element(double amplitude = 1.0) { return project(g_element(amplitude), kG0Begin); }
  GMatrix p_plus_element(double amplitude = 1.0) { return project(g_element(amplitude), kPPlusBegin); }

  KGroupElement k_group(double amplitude = 2.0) { return exp_k(k_vector(amplitude)); }
  PGroupElement p_group(double amplitude = 1.0) { return exp_p(p_element(amplitude)); }

 private:
  static GMatrix project(const GMatrix& a, int first_index) {
    GCoordinates c = g_coordinates(a);
    c.head(first_index).setZero();
    return from_g_coordinates(c);
  }

  std::mt19937_64 engine_;
};

}  // namespace crsu2

#endif  // CRSU2_RANDOM_HPP
