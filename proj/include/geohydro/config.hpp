#pragma once

// Reading typed values out of JSON configuration documents. Every failure is
// reported as ErrorKind::ConfigError naming the offending key; unknown keys
// are rejected so that a typo cannot silently fall back to a default.

#include <cmath>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "geohydro/errors.hpp"
#include "geohydro/expression.hpp"
#include "geohydro/grid.hpp"
#include "geohydro/potential.hpp"

namespace geohydro {

using Json = nlohmann::json;

inline void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, where + " must be a JSON object");
}

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                                const std::string& where) {
  require_object(j, where);
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw Error(ErrorKind::ConfigError, "unknown key '" + item.key() + "' in " + where);
    }
  }
}

inline double get_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>())) {
    throw Error(ErrorKind::ConfigError, std::string("'") + key + "' must be a finite number");
  }
  return v.get<double>();
}

inline double require_number(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ConfigError, std::string("missing '") + key + "'");
  return get_number(j, key, 0.0);
}

inline long long get_integer(const Json& j, const char* key, long long fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw Error(ErrorKind::ConfigError, std::string("'") + key + "' must be an integer");
  }
  return v.get<long long>();
}

inline bool get_bool(const Json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) {
    throw Error(ErrorKind::ConfigError, std::string("'") + key + "' must be true or false");
  }
  return j.at(key).get<bool>();
}

inline std::string get_string(const Json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) {
    throw Error(ErrorKind::ConfigError, std::string("'") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

inline std::vector<double> get_number_list(const Json& j, const char* key,
                                           const std::vector<double>& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_array() || v.empty()) {
    throw Error(ErrorKind::ConfigError, std::string("'") + key + "' must be a non-empty array");
  }
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw Error(ErrorKind::ConfigError, std::string("'") + key + "' must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

inline std::size_t get_grid_size(const Json& j, const char* key, std::size_t fallback) {
  const long long n = get_integer(j, key, static_cast<long long>(fallback));
  if (n < 16 || !is_power_of_two(static_cast<std::size_t>(n))) {
    throw Error(ErrorKind::ConfigError, std::string("'") + key +
                                            "' must be a power of two >= 16");
  }
  return static_cast<std::size_t>(n);
}

inline double get_positive(const Json& j, const char* key, double fallback) {
  const double v = get_number(j, key, fallback);
  if (!(v > 0.0)) throw Error(ErrorKind::ConfigError, std::string("'") + key + "' must be positive");
  return v;
}

/// {"law": "zero" | "linear" | "power" | "shifted_quadratic", "kappa": k, "p": p}
inline NonlinearityLaw parse_nonlinearity(const Json& j) {
  reject_unknown_keys(j, {"law", "kappa", "p"}, "nonlinearity");
  const std::string law = get_string(j, "law", "zero");
  const double kappa = get_number(j, "kappa", 1.0);
  if (law == "zero") return NonlinearityLaw::zero();
  if (law == "linear") return NonlinearityLaw::linear(kappa);
  if (law == "power") return NonlinearityLaw::power(kappa, require_number(j, "p"));
  if (law == "shifted_quadratic") return NonlinearityLaw::shifted_quadratic(kappa);
  throw Error(ErrorKind::ConfigError, "unknown nonlinearity law '" + law + "'");
}

inline Json to_json(const NonlinearityLaw& law) {
  switch (law.kind) {
    case NonlinearityLaw::Kind::Zero: return {{"law", "zero"}};
    case NonlinearityLaw::Kind::Linear: return {{"law", "linear"}, {"kappa", law.kappa}};
    case NonlinearityLaw::Kind::Power: return {{"law", "power"}, {"kappa", law.kappa}, {"p", law.p}};
    case NonlinearityLaw::Kind::ShiftedQuadratic:
      return {{"law", "shifted_quadratic"}, {"kappa", law.kappa}};
  }
  return {};
}

/// {"law": "affine" | "power" | "shallow_water", "a": a, "b": b, "gamma": g}
inline EnergyLaw parse_energy_law(const Json& j) {
  reject_unknown_keys(j, {"law", "a", "b", "gamma"}, "energy");
  const std::string law = get_string(j, "law", "shallow_water");
  if (law == "shallow_water") return EnergyLaw::shallow_water();
  if (law == "affine") return EnergyLaw::affine(require_number(j, "a"), get_number(j, "b", 0.0));
  if (law == "power") return EnergyLaw::power(require_number(j, "a"), require_number(j, "gamma"));
  throw Error(ErrorKind::ConfigError, "unknown energy law '" + law + "'");
}

inline Json to_json(const EnergyLaw& law) {
  if (law.kind == EnergyLaw::Kind::Affine) return {{"law", "affine"}, {"a", law.a}, {"b", law.b}};
  return {{"law", "power"}, {"a", law.a}, {"gamma", law.gamma}};
}

/// Evaluates the expression stored under `key` (or `fallback` when absent).
inline RealField get_expression(const Json& j, const char* key, const std::string& fallback,
                                const PeriodicGrid& grid) {
  return eval_expression(get_string(j, key, fallback), grid);
}

}  // namespace geohydro
