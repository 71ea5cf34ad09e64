#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geohydro/config.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/solvers/hydro.hpp"
#include "geohydro/solvers/schrodinger.hpp"
#include "geohydro/verify/conventions.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

/// Runs the Schrödinger flow and the hydrodynamic flow with the conjugate
/// potential side by side and compares Madelung images projectively.
struct ConjugacyConfig {
  std::size_t n = 128;
  double t_final = 0.25;
  std::vector<double> dts{4e-4, 2e-4, 1e-4};
  std::string V = "cos(x)";
  NonlinearityLaw nonlinearity = NonlinearityLaw::zero();
  std::string rho0 = "1 + 0.5*cos(x)";
  std::string theta0 = "0.5*sin(x)";
  /// Number of comparison times, evenly spaced in (0, t_final].
  int samples = 5;
  double tolerance = 5e-6;
  double ratio_lower = 3.5;
  double ratio_upper = 4.5;
  /// Differences below this are round-off; a halving pair reaching it passes.
  double floor = 1e-12;
  /// Fault injection: multiplies the V and F coefficients of the hydro potential.
  double coupling_scale = 1.0;

  static ConjugacyConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"n", "t_final", "dts", "V", "nonlinearity", "rho0", "theta0", "samples",
                            "tolerance", "ratio_lower", "ratio_upper", "floor", "coupling_scale"},
                        "conjugacy config");
    ConjugacyConfig c;
    c.n = get_grid_size(j, "n", c.n);
    c.t_final = get_positive(j, "t_final", c.t_final);
    c.dts = get_number_list(j, "dts", c.dts);
    c.V = get_string(j, "V", c.V);
    if (j.contains("nonlinearity")) c.nonlinearity = parse_nonlinearity(j.at("nonlinearity"));
    c.rho0 = get_string(j, "rho0", c.rho0);
    c.theta0 = get_string(j, "theta0", c.theta0);
    c.samples = static_cast<int>(get_integer(j, "samples", c.samples));
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.ratio_lower = get_number(j, "ratio_lower", c.ratio_lower);
    c.ratio_upper = get_number(j, "ratio_upper", c.ratio_upper);
    c.floor = get_positive(j, "floor", c.floor);
    c.coupling_scale = get_number(j, "coupling_scale", c.coupling_scale);
    c.validate();
    return c;
  }

  void validate() const {
    if (samples < 1) throw Error(ErrorKind::ConfigError, "'samples' must be at least 1");
    for (double dt : dts) {
      const double steps = t_final / (dt * samples);
      if (!(dt > 0.0) || std::abs(steps - std::round(steps)) > 1e-9 * steps) {
        throw Error(ErrorKind::ConfigError,
                    "every dt must divide t_final / samples into whole steps");
      }
    }
  }

  Json to_json() const {
    return {{"n", n},
            {"t_final", t_final},
            {"dts", dts},
            {"V", V},
            {"nonlinearity", geohydro::to_json(nonlinearity)},
            {"rho0", rho0},
            {"theta0", theta0},
            {"samples", samples},
            {"tolerance", tolerance},
            {"ratio_lower", ratio_lower},
            {"ratio_upper", ratio_upper},
            {"floor", floor},
            {"coupling_scale", coupling_scale}};
  }
};

struct ConjugacyRun {
  double sup_difference = 0.0;
  double l2_difference = 0.0;
};

/// Largest projectively aligned difference over the comparison times.
inline ConjugacyRun run_conjugacy(const ConjugacyConfig& cfg, double dt) {
  const PeriodicGrid grid(cfg.n);
  const RealField V = eval_expression(cfg.V, grid);
  const DensityField rho0 = DensityField::normalized(eval_expression(cfg.rho0, grid));
  HydroState hydro = CotangentPoint::gauge_fixed(rho0, eval_expression(cfg.theta0, grid));

  PotentialSpec spec;
  spec.add_quantum(kConventions.c_quantum);
  spec.add_classical(V, cfg.coupling_scale * kConventions.c_V);
  if (!cfg.nonlinearity.is_zero()) {
    spec.add_integral(cfg.nonlinearity, cfg.coupling_scale * kConventions.c_F);
  }
  const SchrodingerStepper stepper(V, cfg.nonlinearity, dt);
  ComplexField psi = madelung_forward(hydro).values();

  const auto per_sample = static_cast<long>(std::lround(cfg.t_final / (dt * cfg.samples)));
  ConjugacyRun out;
  for (int s = 0; s < cfg.samples; ++s) {
    for (long k = 0; k < per_sample; ++k) {
      psi = stepper.step(psi);
      hydro = step_hydro(hydro, spec, dt);
    }
    const ComplexField image = madelung_forward(hydro).values();
    out.sup_difference = std::max(out.sup_difference, projective_sup_distance(psi, image));
    out.l2_difference = std::max(out.l2_difference, projective_l2_distance(psi, image));
  }
  return out;
}

inline CheckReport check_conjugacy(const ConjugacyConfig& cfg) {
  return run_check("conjugacy", cfg.to_json(), [&](CheckReport& report) {
    cfg.validate();
    std::vector<double> sup, l2;
    for (double dt : cfg.dts) {
      const ConjugacyRun run = run_conjugacy(cfg, dt);
      sup.push_back(run.sup_difference);
      l2.push_back(run.l2_difference);
    }
    report.add_metric("difference.sup", sup.back(), cfg.tolerance);
    report.add_metric("difference.l2", l2.back(), cfg.tolerance);
    Json ratios = Json::array();
    for (std::size_t i = 0; i + 1 < sup.size(); ++i) {
      const std::string label = "halving_ratio[" + std::to_string(i) + "]";
      if (sup[i + 1] <= cfg.floor) {
        report.add_metric(label + ".floor", sup[i + 1], cfg.floor);
        ratios.push_back(nullptr);
      } else {
        report.add_bounded(label, sup[i] / sup[i + 1], cfg.ratio_lower, cfg.ratio_upper);
        ratios.push_back(sup[i] / sup[i + 1]);
      }
    }
    report.note("differences.sup", sup);
    report.note("differences.l2", l2);
    report.note("halving_ratios", ratios);
    report.note("c_V", kConventions.c_V);
    report.note("c_F", kConventions.c_F);
  });
}

}  // namespace geohydro
