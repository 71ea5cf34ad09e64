#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "geohydro/errors.hpp"
#include "geohydro/grid.hpp"

namespace geohydro {

/// Densities with a sample at or below this value are rejected, never clamped.
inline constexpr double kDensityFloor = 1e-12;

/// Tolerance on unit mass / unit norm constraints.
inline constexpr double kConstraintTol = 1e-10;

inline void require_positive_density(const RealField& rho) {
  grid_of(rho);
  const double lo = rho.minCoeff();
  if (!(lo > kDensityFloor)) {
    throw Error(ErrorKind::NonPositiveDensity, "density minimum " + std::to_string(lo) +
                                                   " is not above the positivity floor");
  }
}

/// Positive density of unit mass against dx/2pi.
class DensityField {
 public:
  explicit DensityField(RealField rho) : rho_(std::move(rho)) {
    require_positive_density(rho_);
    const double mass = integrate(rho_);
    if (std::abs(mass - 1.0) > kConstraintTol) {
      throw Error(ErrorKind::MassNotUnit, "density mass is " + std::to_string(mass));
    }
  }

  /// Rescales a positive profile to unit mass.
  static DensityField normalized(const RealField& rho) {
    require_positive_density(rho);
    return DensityField(RealField(rho / integrate(rho)));
  }

  const RealField& values() const noexcept { return rho_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(rho_.size()); }

 private:
  RealField rho_;
};

/// Tangent vector to the unit-mass constraint (mean-zero field).
class TangentDensity {
 public:
  explicit TangentDensity(RealField rho_dot) : rho_dot_(std::move(rho_dot)) {
    grid_of(rho_dot_);
    const double mean = integrate(rho_dot_);
    if (std::abs(mean) > kMeanZeroTol) {
      throw Error(ErrorKind::NonZeroMean, "tangent density has mean " + std::to_string(mean));
    }
  }

  static TangentDensity projected(const RealField& rho_dot) {
    return TangentDensity(RealField(rho_dot - integrate(rho_dot)));
  }

  const RealField& values() const noexcept { return rho_dot_; }

 private:
  RealField rho_dot_;
};

/// Point of the unit L2(dx/2pi) sphere of real functions.
class SphereField {
 public:
  explicit SphereField(RealField f) : f_(std::move(f)) {
    grid_of(f_);
    const double norm2 = integrate(f_.square());
    if (std::abs(norm2 - 1.0) > kConstraintTol) {
      throw Error(ErrorKind::NotNormalized, "sphere field has squared norm " +
                                                std::to_string(norm2));
    }
  }

  static SphereField normalized(const RealField& f) {
    return SphereField(RealField(f / l2_norm(f)));
  }

  const RealField& values() const noexcept { return f_; }

 private:
  RealField f_;
};

}  // namespace geohydro
