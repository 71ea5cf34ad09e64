#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "geohydro/run/simulate.hpp"
#include "geohydro/verify/report.hpp"

namespace geohydro {

/// Default drift bounds. Linear invariants are conserved to round-off by the
/// spectral discretization; energies only to the integrator's accuracy.
inline double default_drift_bound(const std::string& quantity) {
  static const std::map<std::string, double> bounds{
      {"norm", 1e-12},       {"mass", 1e-12},   {"momentum", 1e-12},
      {"constraint", 1e-12}, {"mean", 1e-12},   {"sigma_mean", 1e-12},
      {"hamiltonian", 1e-6}, {"energy", 1e-6},  {"length", 1e-6},
      {"arclength_variation", 1e-6}};
  const auto it = bounds.find(quantity);
  return it == bounds.end() ? 1e-6 : it->second;
}

/// Drift of q is max_i |q_i - q_0| / max(1, |q_0|) over the saved snapshots.
inline double relative_drift(const std::vector<SnapshotRecord>& snaps, const std::string& q) {
  const double q0 = snaps.front().quantities.at(q);
  double worst = 0.0;
  for (const auto& s : snaps) worst = std::max(worst, std::abs(s.quantities.at(q) - q0));
  return worst / std::max(1.0, std::abs(q0));
}

inline CheckReport conservation_report(const RunManifest& run) {
  const Json bounds = run.config.contains("drift_bounds") ? run.config.at("drift_bounds")
                                                          : Json::object();
  return run_check("conservation", run.config, [&](CheckReport& report) {
    if (run.snapshots.empty()) throw Error(ErrorKind::MissingSnapshots, "run has no snapshots");
    for (const auto& [q, value] : run.snapshots.front().quantities) {
      (void)value;
      for (const auto& s : run.snapshots) {
        if (!s.quantities.count(q)) {
          throw Error(ErrorKind::MissingSnapshots, "snapshot at step " + std::to_string(s.index) +
                                                       " lacks '" + q + "'");
        }
      }
      const double bound =
          bounds.contains(q) ? bounds.at(q).get<double>() : default_drift_bound(q);
      report.add_metric(q + ".drift", relative_drift(run.snapshots, q), bound);
    }
    report.note("snapshots", run.snapshots.size());
  });
}

}  // namespace geohydro
