#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geohydro/config.hpp"
#include "geohydro/fft.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/solvers/filament.hpp"
#include "geohydro/verify/differences.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

/// Filament flow pushed through the Hasimoto transform must satisfy the
/// focusing cubic NLS i psi_t + psi'' + |psi|^2 psi / 2 = 0 up to a
/// time-dependent phase. Only gauge-invariant observables are compared:
///   modulus:  k_t + 2 k' tau + k tau' = 0
///   phase:    tau_t - (k''/k - tau^2 + k^2/2)' = 0
struct HasimotoConfig {
  /// "circle" (radius `radius`, flat) or "twisted" (tangent tilted by
  /// eps sin 2s out of the plane, zero total torsion).
  std::string curve = "circle";
  double radius = 1.0;
  double twist = 0.05;
  std::size_t n = 32;
  double t_final = 1.0;
  std::vector<double> dts{8e-3, 4e-3, 2e-3};
  double tolerance = 1e-6;
  double min_order = 2.0;
  double floor = 1e-9;
  double modulus_tolerance = 1e-8;
  double phase_rate_tolerance = 1e-6;
  /// Fourier modes above this index are removed from k and tau before the
  /// residual is formed; 0 keeps every mode.
  std::size_t filter_modes = 0;
  /// Fault injection: multiplies the cubic term.
  double cubic_scale = 1.0;

  static HasimotoConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"curve", "radius", "twist", "n", "t_final", "dts", "tolerance",
                            "min_order", "floor", "modulus_tolerance", "phase_rate_tolerance",
                            "filter_modes", "cubic_scale"},
                        "hasimoto_nls config");
    HasimotoConfig c;
    c.curve = get_string(j, "curve", c.curve);
    if (c.curve != "circle" && c.curve != "twisted") {
      throw Error(ErrorKind::ConfigError, "'curve' must be circle or twisted");
    }
    c.radius = get_positive(j, "radius", c.radius);
    c.twist = get_number(j, "twist", c.twist);
    c.n = get_grid_size(j, "n", c.n);
    c.t_final = get_positive(j, "t_final", c.t_final);
    c.dts = get_number_list(j, "dts", c.dts);
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.min_order = get_number(j, "min_order", c.min_order);
    c.floor = get_positive(j, "floor", c.floor);
    c.modulus_tolerance = get_positive(j, "modulus_tolerance", c.modulus_tolerance);
    c.phase_rate_tolerance = get_positive(j, "phase_rate_tolerance", c.phase_rate_tolerance);
    c.filter_modes = static_cast<std::size_t>(get_integer(j, "filter_modes", 0));
    c.cubic_scale = get_number(j, "cubic_scale", 1.0);
    return c;
  }

  Json to_json() const {
    return {{"curve", curve},
            {"radius", radius},
            {"twist", twist},
            {"n", n},
            {"t_final", t_final},
            {"dts", dts},
            {"tolerance", tolerance},
            {"min_order", min_order},
            {"floor", floor},
            {"modulus_tolerance", modulus_tolerance},
            {"phase_rate_tolerance", phase_rate_tolerance},
            {"filter_modes", filter_modes},
            {"cubic_scale", cubic_scale}};
  }
};

/// Closed unit-speed curve with tangent (cos s cos p, sin s cos p, sin p),
/// p = eps sin 2s. The shift s -> s + pi/2 acts as an orientation-reversing
/// isometry, so the total torsion vanishes.
inline Vec3Field twisted_curve(const PeriodicGrid& grid, double eps) {
  const RealField s = grid.nodes();
  const RealField tilt = eps * (2.0 * s).sin();
  const RealField tx = s.cos() * tilt.cos();
  const RealField ty = s.sin() * tilt.cos();
  const RealField tz = tilt.sin();
  return {antiderivative(RealField(tx - integrate(tx))), antiderivative(RealField(ty - integrate(ty))),
          antiderivative(RealField(tz - integrate(tz)))};
}

/// Zeroes Fourier modes with |k| > keep.
inline RealField low_pass(const RealField& f, std::size_t keep) {
  const auto n = static_cast<std::size_t>(f.size());
  if (keep == 0 || keep >= n / 2) return f;
  ComplexField c = fft(ComplexField(f.cast<complex>()));
  for (std::size_t j = keep + 1; j < n - keep; ++j) c[static_cast<Eigen::Index>(j)] = 0.0;
  return ifft(c).real();
}

struct HasimotoRun {
  double modulus_sup = 0.0;  // largest residual of the modulus equation
  double modulus_l2 = 0.0;
  double phase_sup = 0.0;  // largest residual of the phase-gradient equation
  double phase_l2 = 0.0;
  double modulus_variation = 0.0;  // max over time of max |psi| - min |psi|
  double phase_rate = 0.0;         // mean implied gauge rate over interior times
};

inline HasimotoRun run_hasimoto(const HasimotoConfig& cfg, double dt) {
  const PeriodicGrid grid(cfg.n);
  Vec3Field gamma;
  if (cfg.curve == "circle") {
    const RealField x = grid.nodes();
    gamma = {RealField(cfg.radius * x.cos()), RealField(cfg.radius * x.sin()), grid.constant(0.0)};
  } else {
    gamma = twisted_curve(grid, cfg.twist);
  }
  const long steps = std::lround(cfg.t_final / dt);
  if (std::abs(steps * dt - cfg.t_final) > 1e-9 * cfg.t_final) {
    throw Error(ErrorKind::ConfigError, "dt must divide t_final");
  }

  std::vector<RealField> k, tau, phase;
  FilamentCurve curve(gamma);
  HasimotoRun out;
  for (long s = 0; s <= steps; ++s) {
    if (s > 0) curve = step_filament(curve, dt);
    const auto kt = curvature_torsion(curve);
    const ComplexField psi = hasimoto_transform(curve);
    const RealField modulus = psi.abs();
    out.modulus_variation = std::max(out.modulus_variation, modulus.maxCoeff() - modulus.minCoeff());
    k.push_back(low_pass(kt.k, cfg.filter_modes));
    tau.push_back(low_pass(kt.tau, cfg.filter_modes));
    phase.push_back(unwrap_phase(psi).phase);
  }

  double rate_sum = 0.0;
  long rate_count = 0;
  for (long s = 2; s + 2 <= steps; ++s) {
    const auto i = static_cast<std::size_t>(s);
    const RealField k_t = central_first(k[i - 2], k[i - 1], k[i + 1], k[i + 2], dt);
    const RealField tau_t = central_first(tau[i - 2], tau[i - 1], tau[i + 1], tau[i + 2], dt);
    const RealField& a = k[i];
    const RealField& b = tau[i];
    const RealField da = spectral_derivative(a);
    const RealField modulus_res = k_t + 2.0 * da * b + a * spectral_derivative(b);
    const RealField drive = spectral_derivative(a, 2) / a - b.square() + 0.5 * cfg.cubic_scale * a.square();
    const RealField phase_res = tau_t - spectral_derivative(drive);
    out.modulus_sup = std::max(out.modulus_sup, sup_norm(modulus_res));
    out.modulus_l2 = std::max(out.modulus_l2, l2_norm(modulus_res));
    out.phase_sup = std::max(out.phase_sup, sup_norm(phase_res));
    out.phase_l2 = std::max(out.phase_l2, l2_norm(phase_res));

    const RealField phase_t = central_first(phase[i - 2], phase[i - 1], phase[i + 1], phase[i + 2], dt);
    rate_sum += integrate(RealField(drive - phase_t));
    ++rate_count;
  }
  out.phase_rate = rate_count > 0 ? rate_sum / static_cast<double>(rate_count) : 0.0;
  return out;
}

inline CheckReport check_hasimoto_nls(const HasimotoConfig& cfg) {
  return run_check("hasimoto_nls", cfg.to_json(), [&](CheckReport& report) {
    std::vector<double> errors;
    HasimotoRun finest;
    for (double dt : cfg.dts) {
      finest = run_hasimoto(cfg, dt);
      errors.push_back(std::max(finest.modulus_sup, finest.phase_sup));
    }
    report.add_metric("modulus_equation.sup", finest.modulus_sup, cfg.tolerance);
    report.add_metric("modulus_equation.l2", finest.modulus_l2, cfg.tolerance);
    report.add_metric("phase_equation.sup", finest.phase_sup, cfg.tolerance);
    report.add_metric("phase_equation.l2", finest.phase_l2, cfg.tolerance);
    add_convergence(report, "residual_order", errors, cfg.min_order, cfg.floor);
    if (cfg.curve == "circle") {
      const double expected = 0.5 / (cfg.radius * cfg.radius);
      report.add_metric("modulus_variation", finest.modulus_variation, cfg.modulus_tolerance);
      report.add_metric("phase_rate_error", std::abs(finest.phase_rate - expected),
                        cfg.phase_rate_tolerance);
      report.note("phase_rate_expected", expected);
    }
    report.note("phase_rate", finest.phase_rate);
  });
}

}  // namespace geohydro
