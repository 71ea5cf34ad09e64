#pragma once

#include <string>

#include "geohydro/densities.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/potential.hpp"
#include "geohydro/solvers/rk4.hpp"

namespace geohydro {

/// (rho, theta) of Hamilton's equations on T*Dens.
using HydroState = CotangentPoint;

inline void require_no_vacuum(const RealField& rho) {
  const double lo = rho.minCoeff();
  if (!(lo > kDensityFloor)) {
    throw Error(ErrorKind::VacuumFormation,
                "density minimum fell to " + std::to_string(lo));
  }
}

/// Right-hand side of rho_t + (rho theta')' = 0, theta_t + theta'^2/2 + dU/drho = 0.
inline FieldPack<2> hydro_rhs(const FieldPack<2>& y, const PotentialSpec& spec) {
  const RealField& rho = y[0];
  const RealField& theta = y[1];
  require_no_vacuum(rho);
  const RealField dtheta = spectral_derivative(theta);
  const RealField drive = potential_derivative(spec, DensityField(rho));
  return {RealField(-spectral_derivative(RealField(rho * dtheta))),
          RealField(-0.5 * dtheta.square() - drive)};
}

/// One RK4 step; the gauge int theta rho = 0 is re-imposed afterwards.
inline HydroState step_hydro(const HydroState& s, const PotentialSpec& spec, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
  const FieldPack<2> y{s.rho().values(), s.theta()};
  const FieldPack<2> next = rk4_step(y, dt, [&](const FieldPack<2>& v) { return hydro_rhs(v, spec); });
  require_no_vacuum(next[0]);
  return CotangentPoint::gauge_fixed(DensityField(next[0]), next[1]);
}

}  // namespace geohydro
