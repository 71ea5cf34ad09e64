#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geohydro/config.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/solvers/twohs.hpp"
#include "geohydro/verify/differences.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

/// Inverts the Lenells map along an exact Fubini-Study great circle and
/// checks that the Eulerian fields u = phi_t o phi^{-1}, sigma = alpha_t o
/// phi^{-1} solve the two-component Hunter-Saxton system.
struct TwoHSConfig {
  std::size_t n = 128;
  std::string rho0 = "1 + 0.2*cos(x)";
  std::string theta0 = "0.3*sin(x)";
  /// Initial velocity, given through its hydrodynamic components and mapped
  /// by the Madelung differential, then made horizontal and rescaled.
  std::string rho_dot = "0.3*sin(2*x)";
  std::string theta_dot = "0.5*cos(x)";
  double speed = 0.5;
  double t_final = 0.5;
  int samples = 6;
  /// Step of the central differences in time.
  double h = 1e-3;
  double tolerance = 1e-6;
  /// Step of the 2HS integrator runs.
  double solver_dt = 1e-3;
  double trajectory_tolerance = 1e-6;
  double zero_sigma_tolerance = 1e-10;
  /// Fault injection: multiplies the recovered sigma.
  double sigma_scale = 1.0;

  static TwoHSConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"n", "rho0", "theta0", "rho_dot", "theta_dot", "speed", "t_final",
                            "samples", "h", "tolerance", "solver_dt", "trajectory_tolerance",
                            "zero_sigma_tolerance", "sigma_scale"},
                        "twohs_sasaki config");
    TwoHSConfig c;
    c.n = get_grid_size(j, "n", c.n);
    c.rho0 = get_string(j, "rho0", c.rho0);
    c.theta0 = get_string(j, "theta0", c.theta0);
    c.rho_dot = get_string(j, "rho_dot", c.rho_dot);
    c.theta_dot = get_string(j, "theta_dot", c.theta_dot);
    c.speed = get_positive(j, "speed", c.speed);
    c.t_final = get_positive(j, "t_final", c.t_final);
    c.samples = static_cast<int>(get_integer(j, "samples", c.samples));
    if (c.samples < 2) throw Error(ErrorKind::ConfigError, "'samples' must be at least 2");
    c.h = get_positive(j, "h", c.h);
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.solver_dt = get_positive(j, "solver_dt", c.solver_dt);
    c.trajectory_tolerance = get_positive(j, "trajectory_tolerance", c.trajectory_tolerance);
    c.zero_sigma_tolerance = get_positive(j, "zero_sigma_tolerance", c.zero_sigma_tolerance);
    c.sigma_scale = get_number(j, "sigma_scale", c.sigma_scale);
    return c;
  }

  Json to_json() const {
    return {{"n", n},
            {"rho0", rho0},
            {"theta0", theta0},
            {"rho_dot", rho_dot},
            {"theta_dot", theta_dot},
            {"speed", speed},
            {"t_final", t_final},
            {"samples", samples},
            {"h", h},
            {"tolerance", tolerance},
            {"solver_dt", solver_dt},
            {"trajectory_tolerance", trajectory_tolerance},
            {"zero_sigma_tolerance", zero_sigma_tolerance},
            {"sigma_scale", sigma_scale}};
  }
};

/// Great circle through Madelung(rho0, theta0) with the configured velocity.
inline FubiniStudyGeodesic twohs_geodesic(const TwoHSConfig& cfg) {
  const PeriodicGrid grid(cfg.n);
  const CotangentPoint p = CotangentPoint::gauge_fixed(
      DensityField::normalized(eval_expression(cfg.rho0, grid)), eval_expression(cfg.theta0, grid));
  const CotangentTangent v{TangentDensity::projected(eval_expression(cfg.rho_dot, grid)),
                           eval_expression(cfg.theta_dot, grid)};
  const WaveFunction psi0 = madelung_forward(p);
  const ComplexField direction = horizontal_part(psi0.values(), madelung_differential(p, v));
  const double norm = l2_norm(direction);
  if (!(norm > 0.0)) throw Error(ErrorKind::ZeroVelocity, "initial velocity is vertical or zero");
  return FubiniStudyGeodesic(psi0, ComplexField(direction * (cfg.speed / norm)));
}

struct EulerianFields {
  RealField u;
  RealField sigma;
};

/// (u, sigma) at time t from phi_x = |psi|^2, alpha = 2 arg psi with the
/// normalization phi(t, 0) = 0.
inline EulerianFields lenells_eulerian(const FubiniStudyGeodesic& geo, double t) {
  const ComplexField psi = geo.values(t);
  const ComplexField psi_t = geo.velocity(t);
  const auto n = static_cast<std::size_t>(psi.size());
  const PeriodicGrid grid(n);

  const RealField phi_x = psi.abs2();
  const RealField phi_xt = 2.0 * (psi.conjugate() * psi_t).real();
  if (!(psi.abs().minCoeff() > kModulusFloor)) {
    throw Error(ErrorKind::VanishingModulus, "wave function vanishes along the geodesic");
  }
  const RealField alpha_t = 2.0 * (psi_t / psi).imag();

  const TrigInterpolant shift(antiderivative(RealField(phi_x - integrate(phi_x))));
  const TrigInterpolant shift_t(antiderivative(RealField(phi_xt - integrate(phi_xt))));
  const TrigInterpolant density(phi_x);
  const TrigInterpolant twist_t(alpha_t);
  const double shift0 = shift.value(0.0).real();
  const double shift_t0 = shift_t.value(0.0).real();

  const auto phi = [&](double x) { return x + shift.value(x).real() - shift0; };
  const auto dphi = [&](double x) { return density.value(x).real(); };
  EulerianFields out{RealField(static_cast<Eigen::Index>(n)), RealField(static_cast<Eigen::Index>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    const double x = invert_circle_map(phi, dphi, grid.node(j));
    out.u[static_cast<Eigen::Index>(j)] = shift_t.value(x).real() - shift_t0;
    out.sigma[static_cast<Eigen::Index>(j)] = twist_t.value(x).real();
  }
  return out;
}

inline CheckReport check_twohs_sasaki(const TwoHSConfig& cfg) {
  return run_check("twohs_sasaki", cfg.to_json(), [&](CheckReport& report) {
    const FubiniStudyGeodesic geo = twohs_geodesic(cfg);
    const auto fields = [&](double t) {
      EulerianFields f = lenells_eulerian(geo, t);
      f.sigma *= cfg.sigma_scale;
      return f;
    };
    double sup_u = 0.0, l2_u = 0.0, sup_s = 0.0, l2_s = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const double t = cfg.t_final * i / (cfg.samples - 1);
      const double h = cfg.h;
      const EulerianFields m2 = fields(t - 2 * h), m1 = fields(t - h), c = fields(t),
                           p1 = fields(t + h), p2 = fields(t + 2 * h);
      const auto w = [](const EulerianFields& f) { return spectral_derivative(f.u, 2); };
      const RealField w_t = central_first(w(m2), w(m1), w(p1), w(p2), h);
      const RealField sigma_t = central_first(m2.sigma, m1.sigma, p1.sigma, p2.sigma, h);
      const RealField du = spectral_derivative(c.u);
      const RealField wc = w(c);
      const RealField res_u = w_t - (-2.0 * du * wc - c.u * spectral_derivative(wc) +
                                     c.sigma * spectral_derivative(c.sigma));
      const RealField res_s = sigma_t + spectral_derivative(RealField(c.sigma * c.u));
      sup_u = std::max(sup_u, sup_norm(res_u));
      l2_u = std::max(l2_u, l2_norm(res_u));
      sup_s = std::max(sup_s, sup_norm(res_s));
      l2_s = std::max(l2_s, l2_norm(res_s));
    }
    report.add_metric("curvature_equation.sup", sup_u, cfg.tolerance);
    report.add_metric("curvature_equation.l2", l2_u, cfg.tolerance);
    report.add_metric("sigma_equation.sup", sup_s, cfg.tolerance);
    report.add_metric("sigma_equation.l2", l2_s, cfg.tolerance);

    // integrate the system itself from the recovered initial data
    const long steps = std::lround(cfg.t_final / cfg.solver_dt);
    const EulerianFields start = fields(0.0);
    const EulerianFields end = fields(steps * cfg.solver_dt);
    TwoHSState state = TwoHSState::pinned(start.u, start.sigma);
    TwoHSState flat = TwoHSState::pinned(start.u, RealField::Zero(start.u.size()));
    double zero_sigma = 0.0;
    for (long s = 0; s < steps; ++s) {
      state = step_2hs(state, cfg.solver_dt);
      flat = step_2hs(flat, cfg.solver_dt);
      zero_sigma = std::max(zero_sigma, sup_norm(flat.sigma()));
    }
    const double trajectory = std::max(sup_norm(RealField(state.u() - end.u)),
                                       sup_norm(RealField(state.sigma() - end.sigma)));
    report.add_metric("trajectory_difference", trajectory, cfg.trajectory_tolerance);
    report.add_metric("zero_sigma.max", zero_sigma, cfg.zero_sigma_tolerance);
    report.note("geodesic_speed", geo.speed());
  });
}

}  // namespace geohydro
