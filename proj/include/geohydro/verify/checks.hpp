#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geohydro/verify/conjugacy.hpp"
#include "geohydro/verify/correspondence.hpp"
#include "geohydro/verify/kahler.hpp"

namespace geohydro {

/// Every named check runnable from a JSON config, in the order `verify all` reports them.
inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out{"kahler", "conjugacy"};
    for (const auto& k : correspondence_kinds()) out.push_back(k);
    return out;
  }();
  return names;
}

inline bool is_check_name(std::string_view name) {
  for (const auto& n : check_names()) {
    if (n == name) return true;
  }
  return false;
}

inline CheckReport run_named_check(std::string_view name, const Json& config) {
  if (name == "kahler") return check_kahler(KahlerConfig::from_json(config));
  if (name == "conjugacy") return check_conjugacy(ConjugacyConfig::from_json(config));
  return check_correspondence(name, config);
}

}  // namespace geohydro
