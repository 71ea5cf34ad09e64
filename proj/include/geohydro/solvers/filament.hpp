#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "geohydro/grid.hpp"
#include "geohydro/solvers/rk4.hpp"

namespace geohydro {

/// Relative variation of |gamma'| beyond which a filament run is aborted.
inline constexpr double kArclengthDriftTol = 1e-3;
inline constexpr double kCurvatureFloor = 1e-8;

using Vec3Field = FieldPack<3>;

inline Vec3Field derivative(const Vec3Field& g, int order) {
  return {spectral_derivative(g[0], order), spectral_derivative(g[1], order),
          spectral_derivative(g[2], order)};
}

inline Vec3Field cross(const Vec3Field& a, const Vec3Field& b) {
  return {RealField(a[1] * b[2] - a[2] * b[1]), RealField(a[2] * b[0] - a[0] * b[2]),
          RealField(a[0] * b[1] - a[1] * b[0])};
}

inline RealField dot(const Vec3Field& a, const Vec3Field& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline RealField norm(const Vec3Field& a) { return dot(a, a).sqrt(); }

/// Closed curve in R^3 sampled at x_j = 2 pi j / N, x proportional to arclength.
class FilamentCurve {
 public:
  explicit FilamentCurve(Vec3Field gamma) : gamma_(std::move(gamma)) {
    const auto grid = grid_of(gamma_[0]);
    require_same_shape(gamma_[0], gamma_[1]);
    require_same_shape(gamma_[0], gamma_[2]);
    const Eigen::Index n = gamma_[0].size();
    double min_gap = INFINITY;
    double max_gap = 0.0;
    auto gap = [&](Eigen::Index a, Eigen::Index b) {
      return std::sqrt(std::pow(gamma_[0][a] - gamma_[0][b], 2) +
                       std::pow(gamma_[1][a] - gamma_[1][b], 2) +
                       std::pow(gamma_[2][a] - gamma_[2][b], 2));
    };
    for (Eigen::Index j = 1; j < n; ++j) {
      const double g = gap(j, j - 1);
      min_gap = std::min(min_gap, g);
      max_gap = std::max(max_gap, g);
    }
    const double closing = gap(0, n - 1);
    if (!(min_gap > 0.0) || !std::isfinite(max_gap)) {
      throw Error(ErrorKind::DegenerateCurve, "curve has coincident or non-finite nodes");
    }
    // a closed, evenly sampled curve has a closing chord comparable to its other chords
    if (closing > 4.0 * max_gap || closing < 0.25 * min_gap) {
      throw Error(ErrorKind::DegenerateCurve, "curve samples do not close up");
    }
    (void)grid;
  }

  const Vec3Field& points() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(gamma_[0].size()); }

  RealField speed() const { return norm(derivative(gamma_, 1)); }

  /// (max |gamma'| - min |gamma'|) / mean |gamma'|.
  double arclength_variation() const {
    const RealField s = speed();
    return (s.maxCoeff() - s.minCoeff()) / s.mean();
  }

  double length() const { return kTwoPi * speed().mean(); }

 private:
  Vec3Field gamma_;
};

/// Binormal flow gamma_t = gamma' x gamma''.
inline Vec3Field filament_rhs(const Vec3Field& g) {
  return cross(derivative(g, 1), derivative(g, 2));
}

inline FilamentCurve step_filament(const FilamentCurve& c, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
  FilamentCurve next(rk4_step(c.points(), dt, filament_rhs));
  const double drift = next.arclength_variation();
  if (drift > kArclengthDriftTol) {
    throw Error(ErrorKind::ArclengthDrift,
                "relative variation of |gamma'| reached " + std::to_string(drift));
  }
  return next;
}

struct CurvatureTorsion {
  RealField k;
  RealField tau;
};

inline CurvatureTorsion curvature_torsion(const FilamentCurve& c) {
  const Vec3Field d1 = derivative(c.points(), 1);
  const Vec3Field d2 = derivative(c.points(), 2);
  const Vec3Field d3 = derivative(c.points(), 3);
  const Vec3Field b = cross(d1, d2);
  const RealField b2 = dot(b, b);
  const RealField k = b2.sqrt() / norm(d1).cube();
  if (!(k.minCoeff() > kCurvatureFloor)) {
    throw Error(ErrorKind::VanishingCurvature, "curvature vanishes; torsion undefined");
  }
  return {k, RealField(dot(b, d3) / b2)};
}

/// Total-torsion tolerance for a periodic Hasimoto field.
inline constexpr double kTotalTorsionTol = 1e-8;

/// psi = k e^{i int^x tau}; not normalized.
inline ComplexField hasimoto_transform(const FilamentCurve& c) {
  const auto [k, tau] = curvature_torsion(c);
  const double total = integrate(tau);
  if (std::abs(total) > kTotalTorsionTol) {
    throw Error(ErrorKind::NonzeroTotalTorsion,
                "total torsion " + std::to_string(kTwoPi * total) + " is not zero");
  }
  const RealField phase = antiderivative(RealField(tau - total));
  const complex i_unit(0.0, 1.0);
  return k.cast<complex>() * (i_unit * phase.cast<complex>()).exp();
}

}  // namespace geohydro
