#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geohydro/verify/correspondence/fr_geodesic.hpp"
#include "geohydro/verify/correspondence/hamilton_jacobi.hpp"
#include "geohydro/verify/correspondence/hasimoto_nls.hpp"
#include "geohydro/verify/correspondence/much_horizontal.hpp"
#include "geohydro/verify/correspondence/neumann_fisher.hpp"
#include "geohydro/verify/correspondence/twohs_sasaki.hpp"

namespace geohydro {

inline const std::vector<std::string>& correspondence_kinds() {
  static const std::vector<std::string> kinds{"neumann_fisher",  "hasimoto_nls",
                                              "twohs_sasaki",    "much_horizontal",
                                              "hamilton_jacobi", "fr_geodesic"};
  return kinds;
}

/// Parses `config` for the given kind and runs the check. Config errors are
/// thrown, runtime failures end up in the report.
inline CheckReport check_correspondence(std::string_view kind, const Json& config) {
  if (kind == "neumann_fisher") return check_neumann_fisher(NeumannFisherConfig::from_json(config));
  if (kind == "hasimoto_nls") return check_hasimoto_nls(HasimotoConfig::from_json(config));
  if (kind == "twohs_sasaki") return check_twohs_sasaki(TwoHSConfig::from_json(config));
  if (kind == "much_horizontal") return check_much_horizontal(MuchHorizontalConfig::from_json(config));
  if (kind == "hamilton_jacobi") return check_hamilton_jacobi(HamiltonJacobiConfig::from_json(config));
  if (kind == "fr_geodesic") return check_fr_geodesic(FrGeodesicConfig::from_json(config));
  throw Error(ErrorKind::ConfigError, "unknown correspondence '" + std::string(kind) + "'");
}

}  // namespace geohydro
