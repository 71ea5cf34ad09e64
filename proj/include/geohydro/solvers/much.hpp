#pragma once

#include "geohydro/grid.hpp"
#include "geohydro/solvers/rk4.hpp"

namespace geohydro {

/// Momentum form of the muCH equation: m = mean(u) - u'', m_t = -u m' - 2 u' m.
inline FieldPack<1> much_rhs(const FieldPack<1>& y) {
  const RealField& m = y[0];
  const RealField u = invert_inertia(m);
  return {RealField(-u * spectral_derivative(m) - 2.0 * spectral_derivative(u) * m)};
}

inline RealField step_much(const RealField& u, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
  const FieldPack<1> next = rk4_step(FieldPack<1>{apply_inertia(u)}, dt, much_rhs);
  return invert_inertia(next[0]);
}

}  // namespace geohydro
