#pragma once

#include "geohydro/densities.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/potential.hpp"
#include "geohydro/solvers/barotropic.hpp"

namespace geohydro {

/// 1/2 |psi'|^2 + 1/2 int (V |psi|^2 + F(|psi|^2)).
inline double schrodinger_hamiltonian(const ComplexField& psi, const RealField& V,
                                      const NonlinearityLaw& law) {
  require_same_shape(psi, V);
  const RealField a = psi.abs2();
  const double kinetic = 0.5 * integrate(RealField(spectral_derivative(psi).abs2()));
  return kinetic + 0.5 * integrate(RealField(V * a + law.primitive(a)));
}

/// 1/2 int theta'^2 rho + U(rho).
inline double hydro_hamiltonian(const CotangentPoint& p, const PotentialSpec& spec) {
  const RealField& rho = p.rho().values();
  const RealField dtheta = spectral_derivative(p.theta());
  return 0.5 * integrate(RealField(dtheta.square() * rho)) + potential_value(spec, p.rho());
}

/// 1/2 |psi'|^2 - 1/2 |(|psi|)'|^2 + int e(|psi|^2) |psi|^2.
inline double nls_euler_hamiltonian(const ComplexField& psi, const EnergyLaw& law) {
  const RealField a = psi.abs2();
  const RealField modulus = psi.abs();
  return 0.5 * integrate(RealField(spectral_derivative(psi).abs2())) -
         0.5 * integrate(RealField(spectral_derivative(modulus).square())) +
         integrate(RealField(law.energy(a) * a));
}

/// 1/2 int u^2 rho + int e(rho) rho for the compressible Euler state.
inline double barotropic_hamiltonian(const BarotropicState& s, const EnergyLaw& law) {
  const RealField& rho = s.rho.values();
  return 0.5 * integrate(RealField(s.u.square() * rho)) +
         integrate(RealField(law.energy(rho) * rho));
}

}  // namespace geohydro
