#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "geohydro/config.hpp"
#include "geohydro/densities.hpp"
#include "geohydro/expression.hpp"
#include "geohydro/verify/conventions.hpp"
#include "geohydro/verify/differences.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

struct MuchHorizontalConfig {
  std::size_t n = 128;
  std::string rho0 = "1 + 0.3*cos(x)";
  std::string rho1 = "1 + 0.3*sin(2*x)";
  /// Sample times in [t_start, t_end] along the unit-time great circle.
  double t_start = 0.0;
  double t_end = 1.0;
  int samples = 6;
  double h = 1e-3;
  double tolerance = 1e-6;
  double mean_tolerance = 1e-10;
  int transport_sign = kConventions.transport_sign;
  /// Fault injection: multiplies the recovered velocity.
  double velocity_scale = 1.0;

  static MuchHorizontalConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"n", "rho0", "rho1", "t_start", "t_end", "samples", "h", "tolerance",
                            "mean_tolerance", "transport_sign", "velocity_scale"},
                        "much_horizontal config");
    MuchHorizontalConfig c;
    c.n = get_grid_size(j, "n", c.n);
    c.rho0 = get_string(j, "rho0", c.rho0);
    c.rho1 = get_string(j, "rho1", c.rho1);
    c.t_start = get_number(j, "t_start", c.t_start);
    c.t_end = get_number(j, "t_end", c.t_end);
    if (!(c.t_end > c.t_start)) throw Error(ErrorKind::ConfigError, "'t_end' must exceed 't_start'");
    c.samples = static_cast<int>(get_integer(j, "samples", c.samples));
    if (c.samples < 2) throw Error(ErrorKind::ConfigError, "'samples' must be at least 2");
    c.h = get_positive(j, "h", c.h);
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.mean_tolerance = get_positive(j, "mean_tolerance", c.mean_tolerance);
    c.transport_sign = static_cast<int>(get_integer(j, "transport_sign", c.transport_sign));
    if (c.transport_sign != 1 && c.transport_sign != -1) {
      throw Error(ErrorKind::ConfigError, "'transport_sign' must be 1 or -1");
    }
    c.velocity_scale = get_number(j, "velocity_scale", c.velocity_scale);
    return c;
  }

  Json to_json() const {
    return {{"n", n},           {"rho0", rho0},
            {"rho1", rho1},     {"t_start", t_start},
            {"t_end", t_end},   {"samples", samples},
            {"h", h},           {"tolerance", tolerance},
            {"mean_tolerance", mean_tolerance},
            {"transport_sign", transport_sign},
            {"velocity_scale", velocity_scale}};
  }
};

/// Horizontal velocity of a lift of the density path to the diffeomorphism
/// group, together with the drift speed of the frame it is expressed in.
struct HorizontalLift {
  RealField u;
  double frame_speed = 0.0;
};

/// sign +1: phi with phi_x = rho and u = phi_t o phi^{-1}, shifted by a
/// rotation so that int u = 0; the field lives in a frame rotating with the
/// shift. sign -1: the inverse map as the lift, u = (k - phi_t) / rho with k
/// chosen so that int u = 0, in the fixed frame.
inline HorizontalLift horizontal_lift(const FisherRaoGeodesic& geo, double t, int sign) {
  const RealField rho = geo.root(t).square();
  const RealField rho_t = geo.velocity(t);
  const auto n = static_cast<std::size_t>(rho.size());
  const PeriodicGrid grid(n);

  const RealField b = antiderivative(RealField(rho_t - integrate(rho_t)));
  const RealField phi_t = b - b[0];

  if (sign < 0) {
    const RealField inv = rho.inverse();
    const double k = integrate(RealField(phi_t * inv)) / integrate(inv);
    return {RealField((k - phi_t) * inv), 0.0};
  }

  const TrigInterpolant shift(antiderivative(RealField(rho - integrate(rho))));
  const TrigInterpolant density(rho);
  const TrigInterpolant speed(phi_t);
  const double shift0 = shift.value(0.0).real();
  const double rotation = -integrate(RealField(phi_t * rho));
  const auto phi = [&](double x) { return x + shift.value(x).real() - shift0; };
  const auto dphi = [&](double x) { return density.value(x).real(); };
  RealField u(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double x = invert_circle_map(phi, dphi, grid.node(j));
    u[static_cast<Eigen::Index>(j)] = speed.value(x).real() + rotation;
  }
  return {std::move(u), rotation};
}

struct MuchResidual {
  double sup = 0.0;
  double l2 = 0.0;
  double mean = 0.0;
};

/// Residual of m_t + (u - c_t) m' + 2 u' m with m = -u'' at time t, the
/// horizontal muCH equation written in the frame of the lift.
inline MuchResidual much_lift_residual(const FisherRaoGeodesic& geo, double t, double h, int sign,
                                       double velocity_scale = 1.0) {
  const auto lift = [&](double s) {
    HorizontalLift l = horizontal_lift(geo, s, sign);
    l.u *= velocity_scale;
    l.frame_speed *= velocity_scale;
    return l;
  };
  const auto m = [](const HorizontalLift& l) { return RealField(-spectral_derivative(l.u, 2)); };
  const HorizontalLift m2 = lift(t - 2 * h), m1 = lift(t - h), c = lift(t), p1 = lift(t + h),
                       p2 = lift(t + 2 * h);
  const RealField m_t = central_first(m(m2), m(m1), m(p1), m(p2), h);
  const RealField mc = m(c);
  const RealField res = m_t + (c.u - c.frame_speed) * spectral_derivative(mc) +
                        2.0 * spectral_derivative(c.u) * mc;
  return {sup_norm(res), l2_norm(res), std::abs(integrate(c.u))};
}

struct TransportSignOracle {
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  int sign = 0;  // the sign with the smaller residual
};

/// Compares both lift conventions on a short great-circle arc.
inline TransportSignOracle transport_sign_oracle(std::size_t n = 64, double t = 0.05) {
  const PeriodicGrid grid(n);
  const FisherRaoGeodesic geo(DensityField::normalized(eval_expression("1 + 0.3*cos(x)", grid)),
                              DensityField::normalized(eval_expression("1 + 0.3*sin(2*x)", grid)));
  TransportSignOracle out;
  out.residual_plus = much_lift_residual(geo, t, 1e-3, 1).sup;
  out.residual_minus = much_lift_residual(geo, t, 1e-3, -1).sup;
  out.sign = out.residual_plus <= out.residual_minus ? 1 : -1;
  return out;
}

inline CheckReport check_much_horizontal(const MuchHorizontalConfig& cfg) {
  return run_check("much_horizontal", cfg.to_json(), [&](CheckReport& report) {
    const PeriodicGrid grid(cfg.n);
    const FisherRaoGeodesic geo(DensityField::normalized(eval_expression(cfg.rho0, grid)),
                                DensityField::normalized(eval_expression(cfg.rho1, grid)));
    MuchResidual worst;
    for (int i = 0; i < cfg.samples; ++i) {
      const double t = cfg.t_start + (cfg.t_end - cfg.t_start) * i / (cfg.samples - 1);
      const MuchResidual r =
          much_lift_residual(geo, t, cfg.h, cfg.transport_sign, cfg.velocity_scale);
      worst.sup = std::max(worst.sup, r.sup);
      worst.l2 = std::max(worst.l2, r.l2);
      worst.mean = std::max(worst.mean, r.mean);
    }
    report.add_metric("much_equation.sup", worst.sup, cfg.tolerance);
    report.add_metric("much_equation.l2", worst.l2, cfg.tolerance);
    report.add_metric("mean_velocity", worst.mean, cfg.mean_tolerance);
    report.note("fisher_rao_distance", geo.distance());
  });
}

}  // namespace geohydro
