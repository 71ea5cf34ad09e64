#pragma once

#include <random>

#include "geohydro/grid.hpp"

namespace geohydro {

/// Uniform double in [lo, hi) from the top 53 bits of a 64-bit Mersenne
/// twister; unlike std::uniform_real_distribution the sequence is identical
/// across standard library implementations.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random real trigonometric polynomial of degree <= modes with the given mean.
/// Mode k has coefficients of size at most amplitude / k.
inline RealField random_trig(const PeriodicGrid& grid, std::mt19937_64& rng, int modes,
                             double amplitude, double mean = 0.0) {
  RealField f = grid.constant(mean);
  const RealField x = grid.nodes();
  for (int k = 1; k <= modes; ++k) {
    const double a = uniform(rng, -amplitude, amplitude) / k;
    const double b = uniform(rng, -amplitude, amplitude) / k;
    f += a * (k * x).cos() + b * (k * x).sin();
  }
  return f;
}

/// Random positive unit-mass profile exp(trig) / mean.
inline RealField random_density(const PeriodicGrid& grid, std::mt19937_64& rng, int modes = 3,
                                double amplitude = 0.5) {
  const RealField rho = random_trig(grid, rng, modes, amplitude).exp();
  return rho / rho.mean();
}

}  // namespace geohydro
