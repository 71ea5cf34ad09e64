#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "geohydro/grid.hpp"
#include "geohydro/solvers/rk4.hpp"

namespace geohydro {

/// Compatibility tolerance on int u'' during 2HS integration.
inline constexpr double kTwoHSCompatibilityTol = 1e-8;

/// (u, sigma) of the two-component Hunter-Saxton system with u(0) = 0.
class TwoHSState {
 public:
  TwoHSState(RealField u, RealField sigma) : u_(std::move(u)), sigma_(std::move(sigma)) {
    require_same_shape(u_, sigma_);
    if (std::abs(u_[0]) > kConstraintTol) {
      throw Error(ErrorKind::ConfigError, "2HS gauge requires u(0) = 0, got " +
                                              std::to_string(u_[0]));
    }
  }

  /// Shifts u so that u(0) = 0.
  static TwoHSState pinned(const RealField& u, RealField sigma) {
    return TwoHSState(RealField(u - u[0]), std::move(sigma));
  }

  const RealField& u() const noexcept { return u_; }
  const RealField& sigma() const noexcept { return sigma_; }

 private:
  RealField u_;
  RealField sigma_;
};

/// Recovers u from w = u'' with u(0) = 0.
inline RealField velocity_from_curvature(const RealField& w) {
  const double drift = integrate(w);
  if (std::abs(drift) > kTwoHSCompatibilityTol) {
    throw Error(ErrorKind::NonZeroMean,
                "2HS compatibility lost, int u'' = " + std::to_string(drift));
  }
  const RealField du = antiderivative(RealField(w - drift));
  RealField u = antiderivative(du);
  u -= u[0];
  return u;
}

/// w_t = -2 u' w - u w' + sigma sigma', sigma_t = -(sigma u)'.
inline FieldPack<2> twohs_rhs(const FieldPack<2>& y) {
  const RealField& w = y[0];
  const RealField& sigma = y[1];
  const RealField u = velocity_from_curvature(w);
  const RealField du = spectral_derivative(u);
  return {RealField(-2.0 * du * w - u * spectral_derivative(w) +
                    sigma * spectral_derivative(sigma)),
          RealField(-spectral_derivative(RealField(sigma * u)))};
}

inline TwoHSState step_2hs(const TwoHSState& s, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
  const FieldPack<2> y{spectral_derivative(s.u(), 2), s.sigma()};
  const FieldPack<2> next = rk4_step(y, dt, twohs_rhs);
  return TwoHSState(velocity_from_curvature(next[0]), next[1]);
}

}  // namespace geohydro
