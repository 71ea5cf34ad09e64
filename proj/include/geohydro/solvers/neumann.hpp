#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "geohydro/density_types.hpp"
#include "geohydro/solvers/rk4.hpp"

namespace geohydro {

/// Point on the unit sphere with a tangent velocity, int f f_dot = 0.
class NeumannState {
 public:
  NeumannState(SphereField f, RealField f_dot) : f_(std::move(f)), f_dot_(std::move(f_dot)) {
    require_same_shape(f_.values(), f_dot_);
    const double tangency = integrate(RealField(f_.values() * f_dot_));
    if (std::abs(tangency) > kConstraintTol) {
      throw Error(ErrorKind::NonZeroMean, "velocity not tangent to the sphere (" +
                                              std::to_string(tangency) + ")");
    }
  }

  /// Normalizes f and removes the normal component of f_dot.
  static NeumannState projected(const RealField& f, const RealField& f_dot) {
    SphereField unit = SphereField::normalized(f);
    const RealField& g = unit.values();
    RealField v = f_dot - integrate(RealField(g * f_dot)) * g;
    return NeumannState(std::move(unit), std::move(v));
  }

  const SphereField& f() const noexcept { return f_; }
  const RealField& f_dot() const noexcept { return f_dot_; }

 private:
  SphereField f_;
  RealField f_dot_;
};

/// Multiplier lambda = int (f_dot^2 + f f'').
inline double neumann_multiplier(const RealField& f, const RealField& f_dot) {
  return integrate(RealField(f_dot.square() + f * spectral_derivative(f, 2)));
}

/// f_tt = f'' - lambda f.
inline FieldPack<2> neumann_rhs(const FieldPack<2>& y) {
  const RealField d2f = spectral_derivative(y[0], 2);
  const double lambda = integrate(RealField(y[1].square() + y[0] * d2f));
  return {y[1], RealField(d2f - lambda * y[0])};
}

inline NeumannState step_neumann(const NeumannState& s, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
  const FieldPack<2> y{s.f().values(), s.f_dot()};
  const FieldPack<2> next = rk4_step(y, dt, neumann_rhs);
  return NeumannState::projected(next[0], next[1]);
}

}  // namespace geohydro
