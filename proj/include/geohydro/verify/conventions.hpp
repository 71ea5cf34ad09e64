#pragma once

// Fixed normalization constants shared by every check and embedded in run
// manifests. Each value is pinned by an oracle test in the unit suite.

namespace geohydro {

struct Conventions {
  /// Coefficient of int V rho in the hydrodynamic potential conjugate to
  /// i psi_t = -psi'' + V psi + f(|psi|^2) psi under psi = sqrt(rho) e^{i theta/2}.
  double c_V = 2.0;
  /// Same coefficient for the int F(rho) term.
  double c_F = 2.0;
  /// Coefficient of the Fisher information in that potential.
  double c_quantum = 4.0;
  /// Pullback of the projective symplectic form equals this times the canonical form.
  double symplectic_factor = 0.25;
  /// +1: the diffeomorphism lifting a density path satisfies rho = phi_x (pullback).
  int transport_sign = 1;
  /// The Fisher-Rao gradient of U for the metric 1/4 int rho_dot^2/rho is
  /// this times (dU/drho) rho, up to the multiplier term.
  double fr_gradient_scale = 4.0;
};

inline constexpr Conventions kConventions{};

}  // namespace geohydro
