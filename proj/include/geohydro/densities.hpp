#pragma once

// Geometry of the space of smooth probability densities on the circle:
// Fisher-Rao and Wasserstein-Otto metrics, Fisher-Rao geodesics through the
// square-root embedding into the unit sphere, and the Fisher-Rao Newton
// acceleration.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "geohydro/density_types.hpp"
#include "geohydro/errors.hpp"
#include "geohydro/grid.hpp"
#include "geohydro/potential.hpp"

namespace geohydro {

/// rho -> sqrt(rho), an isometry onto an open subset of the unit sphere.
inline SphereField sqrt_map(const DensityField& density) {
  return SphereField(density.values().sqrt());
}

inline DensityField sqrt_map_inv(const SphereField& f) {
  if (!(f.values().minCoeff() > 0.0)) {
    throw Error(ErrorKind::NonPositiveField, "inverse square-root map needs f > 0");
  }
  return DensityField(f.values().square());
}

/// 1/4 int a b / rho.
inline double fisher_rao_metric(const DensityField& density, const TangentDensity& a,
                                const TangentDensity& b) {
  const RealField& rho = density.values();
  require_same_shape(rho, a.values());
  require_same_shape(rho, b.values());
  return 0.25 * integrate(RealField(a.values() * b.values() / rho));
}

/// int theta_a' theta_b' rho, where rho_dot = (rho theta')'.
inline double wasserstein_otto_metric(const DensityField& density, const TangentDensity& a,
                                      const TangentDensity& b) {
  const RealField& rho = density.values();
  const RealField theta_a = solve_weighted_poisson(rho, a.values());
  const RealField theta_b = solve_weighted_poisson(rho, b.values());
  return integrate(
      RealField(spectral_derivative(theta_a) * spectral_derivative(theta_b) * rho));
}

inline RealField solve_weighted_poisson(const DensityField& density, const RealField& rhs) {
  return solve_weighted_poisson(density.values(), rhs);
}

/// Endpoint separations below this are treated as identical endpoints.
inline constexpr double kIdenticalEndpointTol = 1e-12;

/// Constant-speed Fisher-Rao geodesic on t in [0, 1], the image of a great
/// circle arc under f -> f^2.
class FisherRaoGeodesic {
 public:
  FisherRaoGeodesic(const DensityField& rho0, const DensityField& rho1)
      : f0_(rho0.values().sqrt()), f1_(rho1.values().sqrt()) {
    require_same_shape(f0_, f1_);
    const double overlap = integrate(RealField(f0_ * f1_));
    distance_ = std::acos(std::clamp(overlap, -1.0, 1.0));
    if (distance_ >= std::numbers::pi - 1e-8) {
      throw Error(ErrorKind::AntipodalEndpoints, "geodesic endpoints are antipodal");
    }
    identical_ = distance_ < kIdenticalEndpointTol;
  }

  double distance() const noexcept { return distance_; }

  /// Square-root chart f(t) and its first two t-derivatives.
  RealField root(double t) const {
    if (identical_) return f0_;
    const double d = distance_;
    return (std::sin((1.0 - t) * d) * f0_ + std::sin(t * d) * f1_) / std::sin(d);
  }

  RealField root_velocity(double t) const {
    if (identical_) return RealField::Zero(f0_.size());
    const double d = distance_;
    return d * (-std::cos((1.0 - t) * d) * f0_ + std::cos(t * d) * f1_) / std::sin(d);
  }

  DensityField at(double t) const { return DensityField(root(t).square()); }

  /// d rho / dt = 2 f f_t.
  RealField velocity(double t) const { return 2.0 * root(t) * root_velocity(t); }

 private:
  RealField f0_;
  RealField f1_;
  double distance_ = 0.0;
  bool identical_ = false;
};

struct GeodesicPoint {
  DensityField rho;
  double distance;
};

inline GeodesicPoint fisher_rao_geodesic(const DensityField& rho0, const DensityField& rho1,
                                         double t) {
  FisherRaoGeodesic geo(rho0, rho1);
  return {geo.at(t), geo.distance()};
}

struct NewtonAcceleration {
  RealField rho_ddot;
  double lambda = 0.0;
};

/// Solves rho'' - rho'^2/(2 rho) + (dU/drho) rho = lambda rho for rho''
/// (dots are time derivatives); lambda enforces mass neutrality.
inline NewtonAcceleration fr_newton_accel(const DensityField& density,
                                          const TangentDensity& rho_dot,
                                          const PotentialSpec& spec) {
  const RealField& rho = density.values();
  const RealField& v = rho_dot.values();
  require_same_shape(rho, v);
  const RealField force = potential_derivative(spec, density) * rho;
  const RealField kinetic = v.square() / (2.0 * rho);
  const double lambda = integrate(force) - integrate(kinetic);
  return {RealField(kinetic - force + lambda * rho), lambda};
}

/// Same acceleration in the square-root chart rho = f^2, rho_dot = 2 f f_dot,
/// valid where f changes sign (kinetic term rho_dot^2/(2 rho) = 2 f_dot^2).
inline NewtonAcceleration fr_newton_accel_sphere(const RealField& f, const RealField& f_dot,
                                                 const PotentialSpec& spec) {
  require_same_shape(f, f_dot);
  const RealField rho = f.square();
  const RealField force = potential_force_sphere(spec, f);
  const RealField kinetic = 2.0 * f_dot.square();
  const double lambda = integrate(force) - integrate(kinetic);
  return {RealField(kinetic - force + lambda * rho), lambda};
}

}  // namespace geohydro
