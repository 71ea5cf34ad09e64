#pragma once

// Madelung transform (rho, theta) -> sqrt(rho) e^{i theta/2} between the
// cotangent bundle of densities and projective wave functions, with the
// metrics and symplectic forms on both sides.
//
// Conventions: theta is gauge-fixed by int theta rho = 0; inner products are
// Hermitian L2(dx/2pi), conjugate-linear in the first slot.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "geohydro/density_types.hpp"
#include "geohydro/errors.hpp"
#include "geohydro/grid.hpp"

namespace geohydro {

/// Point (rho, [theta]) of T*Dens with the representative int theta rho = 0.
class CotangentPoint {
 public:
  CotangentPoint(DensityField rho, RealField theta)
      : rho_(std::move(rho)), theta_(std::move(theta)) {
    require_same_shape(rho_.values(), theta_);
    const double gauge = integrate(RealField(theta_ * rho_.values()));
    if (std::abs(gauge) > kConstraintTol) {
      throw Error(ErrorKind::NonZeroMean, "theta violates the gauge int theta rho = 0 (" +
                                              std::to_string(gauge) + ")");
    }
  }

  /// Picks the gauge representative of an arbitrary theta.
  static CotangentPoint gauge_fixed(DensityField rho, const RealField& theta) {
    const double shift = integrate(RealField(theta * rho.values()));
    return CotangentPoint(std::move(rho), RealField(theta - shift));
  }

  const DensityField& rho() const noexcept { return rho_; }
  const RealField& theta() const noexcept { return theta_; }

 private:
  DensityField rho_;
  RealField theta_;
};

/// Tangent vector (rho_dot, theta_dot) at a cotangent point. The constraint
/// int theta_dot rho = 0 is imposed by projection where a base point is known.
struct CotangentTangent {
  TangentDensity rho_dot;
  RealField theta_dot;

  static CotangentTangent zero(std::size_t n) {
    return {TangentDensity(RealField::Zero(static_cast<Eigen::Index>(n))),
            RealField::Zero(static_cast<Eigen::Index>(n))};
  }
};

inline RealField project_theta_dot(const CotangentPoint& p, const RealField& theta_dot) {
  require_same_shape(p.theta(), theta_dot);
  return theta_dot - integrate(RealField(theta_dot * p.rho().values()));
}

/// Complex field of unit L2 norm, compared modulo a constant phase.
class WaveFunction {
 public:
  explicit WaveFunction(ComplexField psi) : psi_(std::move(psi)) {
    grid_of(psi_);
    const double norm2 = integrate(RealField(psi_.abs2()));
    if (std::abs(norm2 - 1.0) > kConstraintTol) {
      throw Error(ErrorKind::NotNormalized,
                  "wave function has squared norm " + std::to_string(norm2));
    }
  }

  static WaveFunction normalized(const ComplexField& psi) {
    return WaveFunction(ComplexField(psi / l2_norm(psi)));
  }

  const ComplexField& values() const noexcept { return psi_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(psi_.size()); }

 private:
  ComplexField psi_;
};

/// Multiplies `psi` by the constant phase maximizing Re<ref, psi>.
inline ComplexField align_phase(const ComplexField& ref, const ComplexField& psi) {
  const complex overlap = inner(ref, psi);
  if (std::abs(overlap) == 0.0) return psi;
  return psi * (std::conj(overlap) / std::abs(overlap));
}

/// sup |ref - e^{ia} psi| after phase alignment.
inline double projective_sup_distance(const ComplexField& ref, const ComplexField& psi) {
  return sup_norm(ComplexField(ref - align_phase(ref, psi)));
}

inline double projective_l2_distance(const ComplexField& ref, const ComplexField& psi) {
  return l2_norm(ComplexField(ref - align_phase(ref, psi)));
}

inline WaveFunction madelung_forward(const CotangentPoint& p) {
  const RealField& rho = p.rho().values();
  const complex i_unit(0.0, 1.0);
  ComplexField psi = rho.sqrt().cast<complex>() * (0.5 * i_unit * p.theta().cast<complex>()).exp();
  return WaveFunction(std::move(psi));
}

struct MomentumMap {
  RealField m;    // Im(conj(psi) psi')
  RealField rho;  // |psi|^2
};

inline MomentumMap momentum_map(const ComplexField& psi) {
  const ComplexField dpsi = spectral_derivative(psi);
  return {RealField((psi.conjugate() * dpsi).imag()), RealField(psi.abs2())};
}

inline MomentumMap momentum_map(const WaveFunction& psi) { return momentum_map(psi.values()); }

/// Vanishing-modulus threshold for phase extraction.
inline constexpr double kModulusFloor = 1e-12;

struct UnwrappedPhase {
  RealField phase;  // continuous argument along the grid, phase[0] = arg psi[0]
  int winding = 0;  // total increment around the circle / 2pi
};

/// Cumulative argument with 2pi jump correction; winding from the closing increment.
inline UnwrappedPhase unwrap_phase(const ComplexField& psi) {
  grid_of(psi);
  if (!(psi.abs().minCoeff() > kModulusFloor)) {
    throw Error(ErrorKind::VanishingModulus, "wave function vanishes on the grid");
  }
  const Eigen::Index n = psi.size();
  RealField phase(n);
  phase[0] = std::arg(psi[0]);
  for (Eigen::Index j = 1; j < n; ++j) {
    phase[j] = phase[j - 1] + std::arg(psi[j] * std::conj(psi[j - 1]));
  }
  const double closing = phase[n - 1] + std::arg(psi[0] * std::conj(psi[n - 1])) - phase[0];
  return {std::move(phase), static_cast<int>(std::lround(closing / kTwoPi))};
}

/// Inverse transform: rho = |psi|^2, theta = 2 arg psi (unwrapped, gauge-fixed).
inline CotangentPoint madelung_inverse(const WaveFunction& psi) {
  const auto unwrapped = unwrap_phase(psi.values());
  if (unwrapped.winding != 0) {
    throw Error(ErrorKind::NonzeroWinding, "phase winds " + std::to_string(unwrapped.winding) +
                                               " times; theta is not periodic");
  }
  DensityField rho(RealField(psi.values().abs2()));
  return CotangentPoint::gauge_fixed(std::move(rho), RealField(2.0 * unwrapped.phase));
}

/// dPhi at p applied to v: (rho_dot/(2 sqrt rho) + i sqrt(rho) theta_dot/2) e^{i theta/2}.
inline ComplexField madelung_differential(const CotangentPoint& p, const CotangentTangent& v) {
  const RealField& rho = p.rho().values();
  const RealField root = rho.sqrt();
  const RealField theta_dot = project_theta_dot(p, v.theta_dot);
  require_same_shape(rho, v.rho_dot.values());
  const complex i_unit(0.0, 1.0);
  const ComplexField amplitude = (v.rho_dot.values() / (2.0 * root)).cast<complex>() +
                                 i_unit * (0.5 * root * theta_dot).cast<complex>();
  return amplitude * (0.5 * i_unit * p.theta().cast<complex>()).exp();
}

/// 1/4 int (rho_dot_v rho_dot_w / rho + theta_dot_v theta_dot_w rho).
inline double sasaki_fr_metric(const CotangentPoint& p, const CotangentTangent& v,
                               const CotangentTangent& w) {
  const RealField& rho = p.rho().values();
  const RealField tv = project_theta_dot(p, v.theta_dot);
  const RealField tw = project_theta_dot(p, w.theta_dot);
  return 0.25 * integrate(RealField(v.rho_dot.values() * w.rho_dot.values() / rho +
                                    tv * tw * rho));
}

/// Real part of <a,b>/<psi,psi> - <a,psi><psi,b>/<psi,psi>^2.
inline double fubini_study_metric(const ComplexField& psi, const ComplexField& a,
                                  const ComplexField& b) {
  const double norm2 = inner(psi, psi).real();
  const complex value = inner(a, b) / norm2 - inner(a, psi) * inner(psi, b) / (norm2 * norm2);
  return value.real();
}

inline double fubini_study_metric(const WaveFunction& psi, const ComplexField& a,
                                  const ComplexField& b) {
  return fubini_study_metric(psi.values(), a, b);
}

/// int (theta_dot_w rho_dot_v - theta_dot_v rho_dot_w).
inline double canonical_symplectic(const CotangentTangent& v, const CotangentTangent& w) {
  return integrate(RealField(w.theta_dot * v.rho_dot.values() - v.theta_dot * w.rho_dot.values()));
}

/// Component of `a` orthogonal to psi.
inline ComplexField horizontal_part(const ComplexField& psi, const ComplexField& a) {
  return a - (inner(psi, a) / inner(psi, psi).real()) * psi;
}

/// Im <a_h, b_h> on horizontal projections.
inline double projective_symplectic(const ComplexField& psi, const ComplexField& a,
                                    const ComplexField& b) {
  return inner(horizontal_part(psi, a), horizontal_part(psi, b)).imag();
}

inline double projective_symplectic(const WaveFunction& psi, const ComplexField& a,
                                    const ComplexField& b) {
  return projective_symplectic(psi.values(), a, b);
}

/// Great circle psi(t) = cos(|v| t) psi0 + sin(|v| t) v/|v| with horizontal v.
class FubiniStudyGeodesic {
 public:
  FubiniStudyGeodesic(WaveFunction psi0, ComplexField v0)
      : psi0_(std::move(psi0)), v0_(std::move(v0)) {
    require_same_shape(psi0_.values(), v0_);
    const complex overlap = inner(psi0_.values(), v0_);
    if (std::abs(overlap) > kConstraintTol) {
      throw Error(ErrorKind::NonHorizontal,
                  "initial velocity is not horizontal, |<psi0, v0>| = " +
                      std::to_string(std::abs(overlap)));
    }
    speed_ = l2_norm(v0_);
    if (!(speed_ > 0.0)) throw Error(ErrorKind::ZeroVelocity, "initial velocity is zero");
    direction_ = v0_ / speed_;
  }

  double speed() const noexcept { return speed_; }

  ComplexField values(double t) const {
    return std::cos(speed_ * t) * psi0_.values() + std::sin(speed_ * t) * direction_;
  }

  ComplexField velocity(double t) const {
    return speed_ * (-std::sin(speed_ * t) * psi0_.values() + std::cos(speed_ * t) * direction_);
  }

  WaveFunction at(double t) const { return WaveFunction(values(t)); }

 private:
  WaveFunction psi0_;
  ComplexField v0_;
  ComplexField direction_;
  double speed_ = 0.0;
};

inline WaveFunction fs_geodesic(const WaveFunction& psi0, const ComplexField& v0, double t) {
  return FubiniStudyGeodesic(psi0, v0).at(t);
}

/// Fubini-Study distance arccos |<a, b>| between unit wave functions.
inline double fubini_study_distance(const ComplexField& a, const ComplexField& b) {
  return std::acos(std::min(1.0, std::abs(inner(a, b)) / (l2_norm(a) * l2_norm(b))));
}

/// (phi_x, alpha) -> sqrt(phi_x) e^{i alpha/2}.
inline WaveFunction lenells_map(const RealField& phi_x, const RealField& alpha) {
  require_same_shape(phi_x, alpha);
  if (!(phi_x.minCoeff() > 0.0)) {
    throw Error(ErrorKind::NonPositiveField, "Lenells map needs phi_x > 0");
  }
  if (std::abs(integrate(phi_x) - 1.0) > kConstraintTol) {
    throw Error(ErrorKind::MassNotUnit, "Lenells map needs mean(phi_x) = 1");
  }
  const complex i_unit(0.0, 1.0);
  return WaveFunction(phi_x.sqrt().cast<complex>() *
                      (0.5 * i_unit * alpha.cast<complex>()).exp());
}

}  // namespace geohydro
