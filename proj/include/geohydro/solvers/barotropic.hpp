#pragma once

#include <utility>

#include "geohydro/density_types.hpp"
#include "geohydro/potential.hpp"
#include "geohydro/solvers/hydro.hpp"
#include "geohydro/solvers/rk4.hpp"

namespace geohydro {

struct BarotropicState {
  DensityField rho;
  RealField u;
};

/// Compressible Euler: rho_t + (rho u)' = 0, u_t + u u' + P(rho)'/rho = 0.
inline FieldPack<2> barotropic_rhs(const FieldPack<2>& y, const EnergyLaw& law) {
  const RealField& rho = y[0];
  const RealField& u = y[1];
  require_no_vacuum(rho);
  const RealField pressure_gradient = spectral_derivative(law.pressure(rho));
  return {RealField(-spectral_derivative(RealField(rho * u))),
          RealField(-u * spectral_derivative(u) - pressure_gradient / rho)};
}

inline BarotropicState step_barotropic(const BarotropicState& s, const EnergyLaw& law, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
  require_same_shape(s.rho.values(), s.u);
  const FieldPack<2> y{s.rho.values(), s.u};
  const FieldPack<2> next =
      rk4_step(y, dt, [&](const FieldPack<2>& v) { return barotropic_rhs(v, law); });
  require_no_vacuum(next[0]);
  return {DensityField(next[0]), next[1]};
}

}  // namespace geohydro
