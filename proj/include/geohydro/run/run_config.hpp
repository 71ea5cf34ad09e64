#pragma once

// Configuration of a `simulate` run. One JSON document describes the whole
// run; the parsed and defaulted form is echoed into the manifest.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "geohydro/config.hpp"

namespace geohydro {

enum class Equation { Schrodinger, Hydro, Barotropic, Neumann, Much, TwoHS, Filament };

inline const std::vector<std::string>& equation_names() {
  static const std::vector<std::string> names{"schrodinger", "hydro", "barotropic", "neumann",
                                              "much",        "twohs", "filament"};
  return names;
}

inline Equation parse_equation(const std::string& name) {
  const auto& names = equation_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Equation>(i);
  }
  throw Error(ErrorKind::ConfigError, "unknown equation '" + name + "'");
}

inline std::string to_string(Equation e) { return equation_names()[static_cast<std::size_t>(e)]; }

/// Initial-data field names per equation with their default expressions.
/// Schrödinger also accepts {rho, theta} in place of {psi_re, psi_im}.
struct InitialField {
  const char* name;
  const char* fallback;
};

inline std::vector<InitialField> initial_fields(Equation e) {
  switch (e) {
    case Equation::Schrodinger: return {{"psi_re", "1"}, {"psi_im", "0"}};
    case Equation::Hydro: return {{"rho", "1"}, {"theta", "0"}};
    case Equation::Barotropic: return {{"rho", "1"}, {"u", "0"}};
    case Equation::Neumann: return {{"f", "1"}, {"f_dot", "0"}};
    case Equation::Much: return {{"u", "0"}};
    case Equation::TwoHS: return {{"u", "0"}, {"sigma", "0"}};
    case Equation::Filament: return {{"gamma_x", "cos(x)"}, {"gamma_y", "sin(x)"}, {"gamma_z", "0"}};
  }
  return {};
}

struct RunConfig {
  Equation equation = Equation::Schrodinger;
  std::size_t n = 64;
  double dt = 1e-3;
  double t_final = 1.0;
  long long save_every = 1;
  std::uint64_t seed = 0;
  std::string out_dir = "run";
  /// Expressions keyed by field name, every field present after parsing.
  Json initial = Json::object();
  /// Amplitude and degree of a seeded random trigonometric perturbation
  /// added to the first initial field (amplitude 0 disables it).
  double perturbation = 0.0;
  int perturbation_modes = 4;
  Json potential = Json::object();
  /// Bounds overriding the conservation defaults, keyed by quantity.
  Json drift_bounds = Json::object();

  /// Number of saved states, floor(t_final / (dt save_every)) + 1.
  long long snapshot_count() const {
    const double ratio = t_final / (dt * static_cast<double>(save_every));
    return static_cast<long long>(std::floor(ratio * (1.0 + 1e-12))) + 1;
  }

  static RunConfig from_json(const Json& j, const std::string& equation_hint = "") {
    reject_unknown_keys(j, {"equation", "n", "dt", "t_final", "save_every", "seed", "out_dir",
                            "initial", "perturbation", "perturbation_modes", "potential",
                            "drift_bounds"},
                        "run config");
    RunConfig c;
    std::string name = get_string(j, "equation", equation_hint);
    if (!equation_hint.empty() && name != equation_hint) {
      throw Error(ErrorKind::ConfigError, "config is for equation '" + name +
                                              "' but '" + equation_hint + "' was requested");
    }
    if (name.empty()) throw Error(ErrorKind::ConfigError, "missing 'equation'");
    c.equation = parse_equation(name);
    c.n = get_grid_size(j, "n", c.n);
    c.dt = get_positive(j, "dt", c.dt);
    c.t_final = get_number(j, "t_final", c.t_final);
    if (!(c.t_final >= 0.0)) throw Error(ErrorKind::ConfigError, "'t_final' must be non-negative");
    c.save_every = get_integer(j, "save_every", c.save_every);
    if (c.save_every < 1) throw Error(ErrorKind::ConfigError, "'save_every' must be at least 1");
    const long long seed = get_integer(j, "seed", 0);
    if (seed < 0) throw Error(ErrorKind::ConfigError, "'seed' must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
    c.out_dir = get_string(j, "out_dir", c.out_dir);
    c.perturbation = get_number(j, "perturbation", c.perturbation);
    c.perturbation_modes = static_cast<int>(get_integer(j, "perturbation_modes", c.perturbation_modes));
    if (c.perturbation_modes < 1) {
      throw Error(ErrorKind::ConfigError, "'perturbation_modes' must be positive");
    }

    const Json initial = j.contains("initial") ? j.at("initial") : Json::object();
    require_object(initial, "'initial'");
    const bool hydro_form = c.equation == Equation::Schrodinger &&
                            (initial.contains("rho") || initial.contains("theta"));
    if (hydro_form) {
      reject_unknown_keys(initial, {"rho", "theta"}, "'initial'");
      c.initial = {{"rho", get_string(initial, "rho", "1")},
                   {"theta", get_string(initial, "theta", "0")}};
    } else {
      for (const auto& item : initial.items()) {
        bool known = false;
        for (const auto& f : initial_fields(c.equation)) known = known || item.key() == f.name;
        if (!known) {
          throw Error(ErrorKind::ConfigError, "unknown key '" + item.key() + "' in 'initial'");
        }
      }
      for (const auto& f : initial_fields(c.equation)) {
        c.initial[f.name] = get_string(initial, f.name, f.fallback);
      }
    }
    // surface expression errors while parsing the config
    const PeriodicGrid grid(c.n);
    for (const auto& item : c.initial.items()) eval_expression(item.value().get<std::string>(), grid);

    const Json potential = j.contains("potential") ? j.at("potential") : Json::object();
    c.potential = normalize_potential(c.equation, potential, grid);

    if (j.contains("drift_bounds")) {
      const Json& b = j.at("drift_bounds");
      require_object(b, "'drift_bounds'");
      for (const auto& item : b.items()) {
        if (!item.value().is_number() || !(item.value().get<double>() > 0.0)) {
          throw Error(ErrorKind::ConfigError, "drift bound '" + item.key() + "' must be positive");
        }
      }
      c.drift_bounds = b;
    }
    return c;
  }

  /// Validates the potential block for the equation and fills in defaults.
  static Json normalize_potential(Equation e, const Json& p, const PeriodicGrid& grid) {
    require_object(p, "'potential'");
    switch (e) {
      case Equation::Schrodinger: {
        reject_unknown_keys(p, {"V", "nonlinearity"}, "'potential'");
        const std::string V = get_string(p, "V", "0");
        eval_expression(V, grid);
        const Json law = p.contains("nonlinearity") ? p.at("nonlinearity") : Json::object();
        return {{"V", V}, {"nonlinearity", geohydro::to_json(parse_nonlinearity(law))}};
      }
      case Equation::Hydro: {
        reject_unknown_keys(p, {"V", "V_coeff", "quantum", "nonlinearity", "F_coeff", "energy",
                                "energy_coeff"},
                            "'potential'");
        const std::string V = get_string(p, "V", "0");
        eval_expression(V, grid);
        const Json law = p.contains("nonlinearity") ? p.at("nonlinearity") : Json::object();
        Json out{{"V", V},
                 {"V_coeff", get_number(p, "V_coeff", 1.0)},
                 {"quantum", get_number(p, "quantum", 0.0)},
                 {"nonlinearity", geohydro::to_json(parse_nonlinearity(law))},
                 {"F_coeff", get_number(p, "F_coeff", 1.0)}};
        if (p.contains("energy")) {
          out["energy"] = geohydro::to_json(parse_energy_law(p.at("energy")));
          out["energy_coeff"] = get_number(p, "energy_coeff", 1.0);
        }
        return out;
      }
      case Equation::Barotropic: {
        reject_unknown_keys(p, {"energy"}, "'potential'");
        const Json law = p.contains("energy") ? p.at("energy") : Json::object();
        return {{"energy", geohydro::to_json(parse_energy_law(law))}};
      }
      default:
        if (!p.empty()) {
          throw Error(ErrorKind::ConfigError, "equation '" + to_string(e) + "' takes no potential");
        }
        return Json::object();
    }
  }

  /// Echo of the run for the manifest. The output directory is left out so
  /// that the same run written to two places produces identical manifests.
  Json to_json() const {
    return {{"equation", to_string(equation)},
            {"n", n},
            {"dt", dt},
            {"t_final", t_final},
            {"save_every", save_every},
            {"seed", seed},
            {"initial", initial},
            {"perturbation", perturbation},
            {"perturbation_modes", perturbation_modes},
            {"potential", potential},
            {"drift_bounds", drift_bounds}};
  }
};

}  // namespace geohydro
