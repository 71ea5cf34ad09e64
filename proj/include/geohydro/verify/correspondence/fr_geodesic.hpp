#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "geohydro/config.hpp"
#include "geohydro/densities.hpp"
#include "geohydro/expression.hpp"
#include "geohydro/verify/differences.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

/// The great-circle curve between two densities solves the free Fisher-Rao
/// Newton equation, and its Fisher-Rao length equals the arccos of the
/// Bhattacharyya overlap.
struct FrGeodesicConfig {
  std::size_t n = 64;
  std::string rho0 = "1 + 0.5*cos(x)";
  std::string rho1 = "1 + 0.4*sin(2*x) + 0.2*cos(3*x)";
  int samples = 9;
  /// Step of the central second difference; smaller steps are dominated by round-off.
  double h = 1e-2;
  double tolerance = 1e-8;
  double distance_tolerance = 1e-12;
  /// Gauss-Legendre panels for the length quadrature.
  int panels = 16;
  /// Fault injection on the Newton acceleration and on the measured length.
  double accel_scale = 1.0;
  double length_scale = 1.0;

  static FrGeodesicConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"n", "rho0", "rho1", "samples", "h", "tolerance", "distance_tolerance",
                            "panels", "accel_scale", "length_scale"},
                        "fr_geodesic config");
    FrGeodesicConfig c;
    c.n = get_grid_size(j, "n", c.n);
    c.rho0 = get_string(j, "rho0", c.rho0);
    c.rho1 = get_string(j, "rho1", c.rho1);
    c.samples = static_cast<int>(get_integer(j, "samples", c.samples));
    if (c.samples < 2) throw Error(ErrorKind::ConfigError, "'samples' must be at least 2");
    c.h = get_positive(j, "h", c.h);
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.distance_tolerance = get_positive(j, "distance_tolerance", c.distance_tolerance);
    c.panels = static_cast<int>(get_integer(j, "panels", c.panels));
    if (c.panels < 1) throw Error(ErrorKind::ConfigError, "'panels' must be positive");
    c.accel_scale = get_number(j, "accel_scale", c.accel_scale);
    c.length_scale = get_number(j, "length_scale", c.length_scale);
    return c;
  }

  Json to_json() const {
    return {{"n", n},
            {"rho0", rho0},
            {"rho1", rho1},
            {"samples", samples},
            {"h", h},
            {"tolerance", tolerance},
            {"distance_tolerance", distance_tolerance},
            {"panels", panels},
            {"accel_scale", accel_scale},
            {"length_scale", length_scale}};
  }
};

/// Fisher-Rao length of the curve on [0, 1], five-point Gauss-Legendre per panel.
inline double fisher_rao_length(const FisherRaoGeodesic& geo, int panels) {
  static constexpr double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                      0.5384693101056831, 0.9061798459386640};
  static constexpr double weights[5] = {0.2369268850561891, 0.4786286704993665,
                                        0.5688888888888889, 0.4786286704993665,
                                        0.2369268850561891};
  double length = 0.0;
  const double width = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (int q = 0; q < 5; ++q) {
      const double t = mid + 0.5 * width * nodes[q];
      const DensityField rho = geo.at(t);
      const TangentDensity v = TangentDensity::projected(geo.velocity(t));
      length += 0.5 * width * weights[q] * std::sqrt(fisher_rao_metric(rho, v, v));
    }
  }
  return length;
}

inline CheckReport check_fr_geodesic(const FrGeodesicConfig& cfg) {
  return run_check("fr_geodesic", cfg.to_json(), [&](CheckReport& report) {
    const PeriodicGrid grid(cfg.n);
    const DensityField rho0 = DensityField::normalized(eval_expression(cfg.rho0, grid));
    const DensityField rho1 = DensityField::normalized(eval_expression(cfg.rho1, grid));
    const FisherRaoGeodesic geo(rho0, rho1);

    const double overlap = integrate(RealField((rho0.values() * rho1.values()).sqrt()));
    const double closed_form = std::acos(std::clamp(overlap, -1.0, 1.0));
    const double length = cfg.length_scale * fisher_rao_length(geo, cfg.panels);
    report.add_metric("distance_error", std::abs(length - closed_form), cfg.distance_tolerance);
    report.add_metric("endpoint_error",
                      sup_norm(RealField(geo.at(1.0).values() - rho1.values())),
                      cfg.distance_tolerance);

    const PotentialSpec free;
    double sup = 0.0, l2 = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const double t = static_cast<double>(i) / (cfg.samples - 1);
      const double h = cfg.h;
      const auto rho = [&](double s) { return RealField(geo.root(s).square()); };
      const RealField rho_ddot =
          central_second(rho(t - 2 * h), rho(t - h), rho(t), rho(t + h), rho(t + 2 * h), h);
      const auto accel = fr_newton_accel(geo.at(t), TangentDensity::projected(geo.velocity(t)), free);
      const RealField residual = rho_ddot - cfg.accel_scale * accel.rho_ddot;
      sup = std::max(sup, sup_norm(residual));
      l2 = std::max(l2, l2_norm(residual));
    }
    report.add_metric("newton_residual.sup", sup, cfg.tolerance);
    report.add_metric("newton_residual.l2", l2, cfg.tolerance);
    report.note("distance", closed_form);
    report.note("length", length);
  });
}

}  // namespace geohydro
