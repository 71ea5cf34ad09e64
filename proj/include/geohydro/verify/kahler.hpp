#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "geohydro/config.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/verify/conventions.hpp"
#include "geohydro/verify/report.hpp"
#include "geohydro/verify/sampling.hpp"

namespace geohydro {

/// Random-sample check that the Madelung differential is an isometry onto
/// Fubini-Study and pulls the projective symplectic form back to a fixed
/// multiple of the canonical one.
struct KahlerConfig {
  std::uint64_t seed = 1;
  int samples = 100;
  std::size_t n = 64;
  double tolerance = 1e-11;
  /// Zero tangent vectors instead of random ones.
  bool zero_tangents = false;
  /// Fault injection: multiplies the Fubini-Study values.
  double metric_scale = 1.0;
  /// Fault injection: multiplies the projective symplectic values.
  double symplectic_scale = 1.0;

  static KahlerConfig from_json(const Json& j) {
    reject_unknown_keys(j, {"seed", "samples", "n", "tolerance", "zero_tangents", "metric_scale",
                            "symplectic_scale"},
                        "kahler config");
    KahlerConfig c;
    c.seed = static_cast<std::uint64_t>(get_integer(j, "seed", 1));
    c.samples = static_cast<int>(get_integer(j, "samples", c.samples));
    if (c.samples < 1) throw Error(ErrorKind::ConfigError, "'samples' must be at least 1");
    c.n = get_grid_size(j, "n", c.n);
    c.tolerance = get_positive(j, "tolerance", c.tolerance);
    c.zero_tangents = get_bool(j, "zero_tangents", false);
    c.metric_scale = get_number(j, "metric_scale", 1.0);
    c.symplectic_scale = get_number(j, "symplectic_scale", 1.0);
    return c;
  }

  Json to_json() const {
    return {{"seed", seed},         {"samples", samples},
            {"n", n},               {"tolerance", tolerance},
            {"zero_tangents", zero_tangents}, {"metric_scale", metric_scale},
            {"symplectic_scale", symplectic_scale}};
  }
};

inline CheckReport check_kahler(const KahlerConfig& cfg) {
  return run_check("kahler", cfg.to_json(), [&](CheckReport& report) {
    const PeriodicGrid grid(cfg.n);
    std::mt19937_64 rng(cfg.seed);
    const auto tangent = [&] {
      if (cfg.zero_tangents) return CotangentTangent::zero(cfg.n);
      return CotangentTangent{TangentDensity::projected(random_trig(grid, rng, 4, 0.8)),
                              random_trig(grid, rng, 4, 0.8, uniform(rng, -1.0, 1.0))};
    };
    double isometry = 0.0;
    double symplectic = 0.0;
    for (int s = 0; s < cfg.samples; ++s) {
      const CotangentPoint p = CotangentPoint::gauge_fixed(
          DensityField::normalized(random_density(grid, rng)), random_trig(grid, rng, 4, 1.5));
      const CotangentTangent v = tangent();
      const CotangentTangent w = tangent();
      const WaveFunction psi = madelung_forward(p);
      const ComplexField dv = madelung_differential(p, v);
      const ComplexField dw = madelung_differential(p, w);

      // Cauchy-Schwarz scale of both bilinear forms on this pair
      const double scale = std::sqrt(sasaki_fr_metric(p, v, v) * sasaki_fr_metric(p, w, w));
      if (scale == 0.0) continue;
      const double g_hydro = sasaki_fr_metric(p, v, w);
      const double g_wave = cfg.metric_scale * fubini_study_metric(psi, dv, dw);
      const double w_hydro = kConventions.symplectic_factor * canonical_symplectic(v, w);
      const double w_wave = cfg.symplectic_scale * projective_symplectic(psi, dv, dw);
      isometry = std::max(isometry, std::abs(g_wave - g_hydro) / scale);
      symplectic = std::max(symplectic, std::abs(w_wave - w_hydro) / scale);
    }
    report.add_metric("isometry.max_relative_error", isometry, cfg.tolerance);
    report.add_metric("symplectic.max_relative_error", symplectic, cfg.tolerance);
    report.note("symplectic_factor", kConventions.symplectic_factor);
  });
}

}  // namespace geohydro
