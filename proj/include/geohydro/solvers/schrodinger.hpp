#pragma once

#include <cmath>
#include <utility>

#include "geohydro/grid.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/potential.hpp"

namespace geohydro {

/// Strang split step for i psi_t = -psi'' + V psi + f(|psi|^2) psi:
/// half potential step, exact kinetic step in Fourier space, half potential step.
/// Plane waves e^{ikx} acquire the phase e^{-i k^2 t}.
class SchrodingerStepper {
 public:
  SchrodingerStepper(RealField V, NonlinearityLaw law, double dt)
      : V_(std::move(V)), law_(law), dt_(dt) {
    if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
    const auto n = static_cast<std::size_t>(grid_of(V_).size());
    kinetic_.resize(static_cast<Eigen::Index>(n));
    const complex i_unit(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double k = wavenumber(j, n);
      kinetic_[static_cast<Eigen::Index>(j)] = std::exp(-i_unit * (k * k * dt));
    }
  }

  double dt() const noexcept { return dt_; }

  ComplexField step(const ComplexField& psi) const {
    require_same_shape(psi, V_);
    ComplexField out = potential_half(psi);
    out = ifft(ComplexField(fft(out) * kinetic_));
    return potential_half(out);
  }

 private:
  ComplexField potential_half(const ComplexField& psi) const {
    RealField phase = V_;
    if (!law_.is_zero()) phase += law_.f(RealField(psi.abs2()));
    const complex i_unit(0.0, 1.0);
    return psi * (-i_unit * (0.5 * dt_) * phase.cast<complex>()).exp();
  }

  RealField V_;
  NonlinearityLaw law_;
  double dt_;
  ComplexField kinetic_;
};

inline WaveFunction step_schrodinger(const WaveFunction& psi, const RealField& V,
                                     const NonlinearityLaw& law, double dt) {
  return WaveFunction(SchrodingerStepper(V, law, dt).step(psi.values()));
}

}  // namespace geohydro
