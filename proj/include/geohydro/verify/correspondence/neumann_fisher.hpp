#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "geohydro/config.hpp"
#include "geohydro/densities.hpp"
#include "geohydro/solvers/neumann.hpp"
#include "geohydro/verify/conventions.hpp"
#include "geohydro/verify/differences.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

/// Neumann trajectories f(t) on the unit sphere, read as densities rho = f^2,
/// must solve the Fisher-Rao Newton equation with the Fisher information as
/// potential. The acceleration is evaluated in the square-root chart so that
/// sign-changing f (eigenfunctions) are admissible.
struct NeumannFisherConfig {
  std::size_t n = 64;
  std::string f0 = "1 + 0.3*cos(x) + 0.2*cos(2*x)";
  std::string f_dot0 = "0";
  double t_final = 1.0;
  std::vector<double> dts{4e-2, 2e-2, 1e-2};
  double tolerance = 1e-6;
  double min_order = 3.5;
  double floor = 1e-10;
  /// When set, the Neumann multiplier of the initial state must equal this.
  std::optional<double> expected_lambda;
  double lambda_tolerance = 1e-12;
  /// Multiplies (dU/drho) rho in the Newton equation; see Conventions.
  double gradient_scale = kConventions.fr_gradient_scale;
  /// Fault injection: multiplies the potential.
  double potential_scale = 1.0;

  static NeumannFisherConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"n", "f0", "f_dot0", "t_final", "dts", "tolerance", "min_order", "floor",
                            "expected_lambda", "lambda_tolerance", "gradient_scale",
                            "potential_scale"},
                        "neumann_fisher config");
    NeumannFisherConfig c;
    c.n = get_grid_size(j, "n", c.n);
    c.f0 = get_string(j, "f0", c.f0);
    c.f_dot0 = get_string(j, "f_dot0", c.f_dot0);
    c.t_final = get_positive(j, "t_final", c.t_final);
    c.dts = get_number_list(j, "dts", c.dts);
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.min_order = get_number(j, "min_order", c.min_order);
    c.floor = get_positive(j, "floor", c.floor);
    if (j.contains("expected_lambda")) c.expected_lambda = require_number(j, "expected_lambda");
    c.lambda_tolerance = get_positive(j, "lambda_tolerance", c.lambda_tolerance);
    c.gradient_scale = get_number(j, "gradient_scale", c.gradient_scale);
    c.potential_scale = get_number(j, "potential_scale", c.potential_scale);
    return c;
  }

  Json to_json() const {
    Json j{{"n", n},
           {"f0", f0},
           {"f_dot0", f_dot0},
           {"t_final", t_final},
           {"dts", dts},
           {"tolerance", tolerance},
           {"min_order", min_order},
           {"floor", floor},
           {"lambda_tolerance", lambda_tolerance},
           {"gradient_scale", gradient_scale},
           {"potential_scale", potential_scale}};
    j["expected_lambda"] = expected_lambda ? Json(*expected_lambda) : Json(nullptr);
    return j;
  }
};

struct NeumannFisherRun {
  double sup = 0.0;
  double l2 = 0.0;
  double initial_lambda = 0.0;     // Neumann multiplier at t = 0
  double initial_fr_lambda = 0.0;  // Fisher-Rao multiplier at t = 0
};

inline NeumannFisherRun run_neumann_fisher(const NeumannFisherConfig& cfg, double dt) {
  const PeriodicGrid grid(cfg.n);
  const long steps = std::lround(cfg.t_final / dt);
  if (steps < 4 || std::abs(steps * dt - cfg.t_final) > 1e-9 * cfg.t_final) {
    throw Error(ErrorKind::ConfigError, "dt must divide t_final into at least 4 steps");
  }
  PotentialSpec spec;
  spec.add_quantum(cfg.gradient_scale * cfg.potential_scale);

  NeumannState state = NeumannState::projected(eval_expression(cfg.f0, grid),
                                               eval_expression(cfg.f_dot0, grid));
  std::vector<NeumannState> path{state};
  for (long s = 0; s < steps; ++s) {
    state = step_neumann(state, dt);
    path.push_back(state);
  }
  const auto rho = [&](std::size_t i) { return RealField(path[i].f().values().square()); };

  NeumannFisherRun out;
  out.initial_lambda = neumann_multiplier(path[0].f().values(), path[0].f_dot());
  out.initial_fr_lambda = fr_newton_accel_sphere(path[0].f().values(), path[0].f_dot(), spec).lambda;
  for (std::size_t i = 2; i + 2 < path.size(); ++i) {
    const RealField rho_ddot = central_second(rho(i - 2), rho(i - 1), rho(i), rho(i + 1), rho(i + 2), dt);
    const auto accel = fr_newton_accel_sphere(path[i].f().values(), path[i].f_dot(), spec);
    const RealField residual = rho_ddot - accel.rho_ddot;
    out.sup = std::max(out.sup, sup_norm(residual));
    out.l2 = std::max(out.l2, l2_norm(residual));
  }
  return out;
}

inline CheckReport check_neumann_fisher(const NeumannFisherConfig& cfg) {
  return run_check("neumann_fisher", cfg.to_json(), [&](CheckReport& report) {
    std::vector<double> errors;
    NeumannFisherRun finest;
    for (double dt : cfg.dts) {
      finest = run_neumann_fisher(cfg, dt);
      errors.push_back(finest.sup);
    }
    report.add_metric("newton_residual.sup", finest.sup, cfg.tolerance);
    report.add_metric("newton_residual.l2", finest.l2, cfg.tolerance);
    add_convergence(report, "residual_order", errors, cfg.min_order, cfg.floor);
    if (cfg.expected_lambda) {
      report.add_metric("lambda_error", std::abs(finest.initial_lambda - *cfg.expected_lambda),
                        cfg.lambda_tolerance);
    }
    report.note("neumann_lambda", finest.initial_lambda);
    report.note("fisher_rao_lambda", finest.initial_fr_lambda);
  });
}

}  // namespace geohydro
