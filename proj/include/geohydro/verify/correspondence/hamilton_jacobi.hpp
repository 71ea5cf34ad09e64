#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geohydro/config.hpp"
#include "geohydro/solvers/hydro.hpp"
#include "geohydro/verify/differences.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

/// Particles moving with the hydrodynamic velocity theta' must obey Newton's
/// law x'' = -V'(x) when only a classical potential acts.
struct HamiltonJacobiConfig {
  std::size_t n = 64;
  std::string V = "cos(x)";
  double V_coeff = 1.0;
  std::string rho0 = "1 + 0.5*cos(x)";
  std::string theta0 = "0.5*sin(x)";
  double t_final = 0.5;
  std::vector<double> dts{2.5e-2, 1.25e-2, 6.25e-3};
  int characteristics = 16;
  double tolerance = 1e-5;
  double min_order = 2.0;
  double floor = 1e-10;
  /// Fault injection: multiplies the force in the comparison.
  double force_scale = 1.0;

  static HamiltonJacobiConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"n", "V", "V_coeff", "rho0", "theta0", "t_final", "dts",
                            "characteristics", "tolerance", "min_order", "floor", "force_scale"},
                        "hamilton_jacobi config");
    HamiltonJacobiConfig c;
    c.n = get_grid_size(j, "n", c.n);
    c.V = get_string(j, "V", c.V);
    c.V_coeff = get_number(j, "V_coeff", c.V_coeff);
    c.rho0 = get_string(j, "rho0", c.rho0);
    c.theta0 = get_string(j, "theta0", c.theta0);
    c.t_final = get_positive(j, "t_final", c.t_final);
    c.dts = get_number_list(j, "dts", c.dts);
    c.characteristics = static_cast<int>(get_integer(j, "characteristics", c.characteristics));
    if (c.characteristics < 1) throw Error(ErrorKind::ConfigError, "'characteristics' must be positive");
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.min_order = get_number(j, "min_order", c.min_order);
    c.floor = get_positive(j, "floor", c.floor);
    c.force_scale = get_number(j, "force_scale", c.force_scale);
    return c;
  }

  Json to_json() const {
    return {{"n", n},         {"V", V},
            {"V_coeff", V_coeff},
            {"rho0", rho0},   {"theta0", theta0},
            {"t_final", t_final},
            {"dts", dts},     {"characteristics", characteristics},
            {"tolerance", tolerance},
            {"min_order", min_order},
            {"floor", floor}, {"force_scale", force_scale}};
  }
};

struct HamiltonJacobiRun {
  double sup = 0.0;  // max |x'' + c V'(x)| over characteristics and interior times
  double l2 = 0.0;   // root mean square over the same samples
};

/// Newton residual of the characteristics for one dt.
/// Characteristics advance by RK4 with step 2 dt so that the stage at the
/// half step lands on a stored snapshot.
inline HamiltonJacobiRun run_hamilton_jacobi(const HamiltonJacobiConfig& cfg, double dt) {
  const PeriodicGrid grid(cfg.n);
  const long steps = std::lround(cfg.t_final / dt);
  if (steps < 10 || steps % 2 != 0 || std::abs(steps * dt - cfg.t_final) > 1e-9 * cfg.t_final) {
    throw Error(ErrorKind::ConfigError, "dt must divide t_final into an even number (>= 10) of steps");
  }
  const RealField V = eval_expression(cfg.V, grid);
  PotentialSpec spec;
  spec.add_classical(V, cfg.V_coeff);
  const TrigInterpolant force(RealField(cfg.V_coeff * spectral_derivative(V)));

  HydroState state = CotangentPoint::gauge_fixed(
      DensityField::normalized(eval_expression(cfg.rho0, grid)), eval_expression(cfg.theta0, grid));
  std::vector<TrigInterpolant> velocity{TrigInterpolant(spectral_derivative(state.theta()))};
  for (long s = 0; s < steps; ++s) {
    state = step_hydro(state, spec, dt);
    velocity.emplace_back(spectral_derivative(state.theta()));
  }
  const auto vel = [&](std::size_t k, double x) { return velocity[k].value(x).real(); };

  const double H = 2.0 * dt;
  HamiltonJacobiRun out;
  double sum2 = 0.0;
  std::size_t count = 0;
  for (int c = 0; c < cfg.characteristics; ++c) {
    double x = kTwoPi * c / cfg.characteristics;
    std::vector<double> path{x};
    for (std::size_t k = 0; k + 2 < velocity.size(); k += 2) {
      const double k1 = vel(k, x);
      const double k2 = vel(k + 1, x + 0.5 * H * k1);
      const double k3 = vel(k + 1, x + 0.5 * H * k2);
      const double k4 = vel(k + 2, x + H * k3);
      x += H / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      path.push_back(x);
    }
    for (std::size_t i = 2; i + 2 < path.size(); ++i) {
      const double accel =
          central_second(path[i - 2], path[i - 1], path[i], path[i + 1], path[i + 2], H);
      const double r = accel + cfg.force_scale * force.value(path[i]).real();
      out.sup = std::max(out.sup, std::abs(r));
      sum2 += r * r;
      ++count;
    }
  }
  out.l2 = count > 0 ? std::sqrt(sum2 / static_cast<double>(count)) : 0.0;
  return out;
}

inline CheckReport check_hamilton_jacobi(const HamiltonJacobiConfig& cfg) {
  return run_check("hamilton_jacobi", cfg.to_json(), [&](CheckReport& report) {
    std::vector<double> errors;
    HamiltonJacobiRun finest;
    for (double dt : cfg.dts) {
      finest = run_hamilton_jacobi(cfg, dt);
      errors.push_back(finest.sup);
    }
    report.add_metric("newton_residual.sup", finest.sup, cfg.tolerance);
    report.add_metric("newton_residual.l2", finest.l2, cfg.tolerance);
    add_convergence(report, "residual_order", errors, cfg.min_order, cfg.floor);
  });
}

}  // namespace geohydro
