#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "geohydro/io/csv.hpp"
#include "geohydro/madelung.hpp"
#include "geohydro/run/run_config.hpp"
#include "geohydro/solvers/barotropic.hpp"
#include "geohydro/solvers/filament.hpp"
#include "geohydro/solvers/hamiltonian.hpp"
#include "geohydro/solvers/hydro.hpp"
#include "geohydro/solvers/much.hpp"
#include "geohydro/solvers/neumann.hpp"
#include "geohydro/solvers/schrodinger.hpp"
#include "geohydro/solvers/twohs.hpp"
#include "geohydro/verify/conventions.hpp"
#include "geohydro/verify/sampling.hpp"
#include "geohydro/version.hpp"

namespace geohydro {

struct SnapshotRecord {
  long long index = 0;  // step count
  double t = 0.0;
  std::map<std::string, double> quantities;
};

/// Self-describing record of a simulate run.
struct RunManifest {
  Json config = Json::object();
  std::string code_version = kVersion;
  Json conventions = Json::object();
  std::vector<SnapshotRecord> snapshots;
  std::vector<std::string> files;

  Json to_json() const {
    Json snaps = Json::array();
    for (const auto& s : snapshots) {
      Json q = Json::object();
      for (const auto& [k, v] : s.quantities) q[k] = v;
      snaps.push_back({{"step", s.index}, {"t", s.t}, {"quantities", q}});
    }
    return {{"config", config},           {"code_version", code_version},
            {"conventions", conventions}, {"snapshots", snaps},
            {"files", files}};
  }

  static RunManifest from_json(const Json& j) {
    require_object(j, "manifest");
    RunManifest m;
    try {
      m.config = j.at("config");
      m.code_version = j.at("code_version").get<std::string>();
      m.conventions = j.at("conventions");
      for (const auto& s : j.at("snapshots")) {
        SnapshotRecord r;
        r.index = s.at("step").get<long long>();
        r.t = s.at("t").get<double>();
        for (const auto& item : s.at("quantities").items()) r.quantities[item.key()] = item.value().get<double>();
        m.snapshots.push_back(std::move(r));
      }
      for (const auto& f : j.at("files")) m.files.push_back(f.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ConfigError, std::string("malformed manifest: ") + e.what());
    }
    return m;
  }
};

inline Json conventions_json() {
  return {{"c_V", kConventions.c_V},
          {"c_F", kConventions.c_F},
          {"c_quantum", kConventions.c_quantum},
          {"symplectic_factor", kConventions.symplectic_factor},
          {"transport_sign", kConventions.transport_sign},
          {"fr_gradient_scale", kConventions.fr_gradient_scale}};
}

/// Field histories and the manifest of one run, before anything is written.
struct RunResult {
  RunManifest manifest;
  std::vector<std::pair<std::string, SnapshotTable>> fields;
};

namespace detail {

/// Equation-independent bookkeeping: an integrator exposes its current
/// fields and conserved quantities, and advances by one step.
template <class State, class Step, class Fields, class Quantities>
RunResult drive(const RunConfig& cfg, State state, Step&& step, Fields&& fields,
                Quantities&& quantities, const std::vector<std::string>& names) {
  const PeriodicGrid grid(cfg.n);
  RunResult result;
  result.manifest.config = cfg.to_json();
  result.manifest.conventions = conventions_json();
  for (const auto& name : names) result.fields.push_back({name, SnapshotTable{{}, grid.nodes(), {}}});

  const long long count = cfg.snapshot_count();
  const auto record = [&](long long stepno) {
    const double t = static_cast<double>(stepno) * cfg.dt;
    const std::vector<RealField> values = fields(state);
    for (std::size_t k = 0; k < names.size(); ++k) {
      result.fields[k].second.times.push_back(t);
      result.fields[k].second.rows.push_back(values[k]);
    }
    result.manifest.snapshots.push_back({stepno, t, quantities(state)});
  };
  record(0);
  for (long long s = 1; s < count; ++s) {
    for (long long k = 0; k < cfg.save_every; ++k) state = step(state);
    record(s * cfg.save_every);
  }
  for (const auto& name : names) result.manifest.files.push_back(name + ".csv");
  return result;
}

}  // namespace detail

/// Initial fields evaluated on the grid, with the seeded perturbation applied.
inline std::map<std::string, RealField> initial_values(const RunConfig& cfg) {
  const PeriodicGrid grid(cfg.n);
  std::map<std::string, RealField> out;
  for (const auto& item : cfg.initial.items()) {
    out[item.key()] = eval_expression(item.value().get<std::string>(), grid);
  }
  if (cfg.perturbation != 0.0) {
    std::mt19937_64 rng(cfg.seed);
    const std::string first = cfg.initial.contains("rho") ? "rho" : cfg.initial.begin().key();
    out[first] += random_trig(grid, rng, cfg.perturbation_modes, cfg.perturbation);
  }
  return out;
}

inline PotentialSpec hydro_spec(const Json& p, const PeriodicGrid& grid) {
  PotentialSpec spec;
  spec.add_classical(eval_expression(p.at("V").get<std::string>(), grid), p.at("V_coeff").get<double>());
  const double quantum = p.at("quantum").get<double>();
  if (quantum != 0.0) spec.add_quantum(quantum);
  const NonlinearityLaw law = parse_nonlinearity(p.at("nonlinearity"));
  if (!law.is_zero()) spec.add_integral(law, p.at("F_coeff").get<double>());
  if (p.contains("energy")) {
    spec.add_barotropic(parse_energy_law(p.at("energy")), p.at("energy_coeff").get<double>());
  }
  return spec;
}

inline RunResult simulate(const RunConfig& cfg) {
  const PeriodicGrid grid(cfg.n);
  auto init = initial_values(cfg);
  const auto& p = cfg.potential;

  switch (cfg.equation) {
    case Equation::Schrodinger: {
      const RealField V = eval_expression(p.at("V").get<std::string>(), grid);
      const NonlinearityLaw law = parse_nonlinearity(p.at("nonlinearity"));
      const complex i_unit(0.0, 1.0);
      const ComplexField psi0 =
          init.count("rho")
              ? madelung_forward(CotangentPoint::gauge_fixed(DensityField::normalized(init["rho"]),
                                                             init["theta"]))
                    .values()
              : WaveFunction::normalized(ComplexField(init["psi_re"].cast<complex>() +
                                                      i_unit * init["psi_im"].cast<complex>()))
                    .values();
      const SchrodingerStepper stepper(V, law, cfg.dt);
      return detail::drive(
          cfg, psi0, [&](const ComplexField& psi) { return stepper.step(psi); },
          [](const ComplexField& psi) { return std::vector<RealField>{psi.real(), psi.imag()}; },
          [&](const ComplexField& psi) {
            return std::map<std::string, double>{
                {"norm", integrate(RealField(psi.abs2()))},
                {"hamiltonian", schrodinger_hamiltonian(psi, V, law)}};
          },
          {"psi_re", "psi_im"});
    }
    case Equation::Hydro: {
      const PotentialSpec spec = hydro_spec(p, grid);
      const HydroState s0 =
          CotangentPoint::gauge_fixed(DensityField::normalized(init["rho"]), init["theta"]);
      return detail::drive(
          cfg, s0, [&](const HydroState& s) { return step_hydro(s, spec, cfg.dt); },
          [](const HydroState& s) { return std::vector<RealField>{s.rho().values(), s.theta()}; },
          [&](const HydroState& s) {
            return std::map<std::string, double>{{"mass", integrate(s.rho().values())},
                                                 {"hamiltonian", hydro_hamiltonian(s, spec)}};
          },
          {"rho", "theta"});
    }
    case Equation::Barotropic: {
      const EnergyLaw law = parse_energy_law(p.at("energy"));
      const BarotropicState s0{DensityField::normalized(init["rho"]), init["u"]};
      return detail::drive(
          cfg, s0, [&](const BarotropicState& s) { return step_barotropic(s, law, cfg.dt); },
          [](const BarotropicState& s) { return std::vector<RealField>{s.rho.values(), s.u}; },
          [&](const BarotropicState& s) {
            return std::map<std::string, double>{
                {"mass", integrate(s.rho.values())},
                {"momentum", integrate(RealField(s.rho.values() * s.u))},
                {"hamiltonian", barotropic_hamiltonian(s, law)}};
          },
          {"rho", "u"});
    }
    case Equation::Neumann: {
      const NeumannState s0 = NeumannState::projected(init["f"], init["f_dot"]);
      return detail::drive(
          cfg, s0, [&](const NeumannState& s) { return step_neumann(s, cfg.dt); },
          [](const NeumannState& s) { return std::vector<RealField>{s.f().values(), s.f_dot()}; },
          [](const NeumannState& s) {
            const RealField& f = s.f().values();
            return std::map<std::string, double>{
                {"constraint", integrate(RealField(f.square()))},
                {"energy", 0.5 * integrate(RealField(s.f_dot().square() +
                                                     spectral_derivative(f).square()))}};
          },
          {"f", "f_dot"});
    }
    case Equation::Much: {
      return detail::drive(
          cfg, init["u"], [&](const RealField& u) { return step_much(u, cfg.dt); },
          [](const RealField& u) { return std::vector<RealField>{u}; },
          [](const RealField& u) {
            const double mean = integrate(u);
            return std::map<std::string, double>{
                {"mean", mean},
                {"energy", 0.5 * (mean * mean +
                                  integrate(RealField(spectral_derivative(u).square())))}};
          },
          {"u"});
    }
    case Equation::TwoHS: {
      const TwoHSState s0 = TwoHSState::pinned(init["u"], init["sigma"]);
      return detail::drive(
          cfg, s0, [&](const TwoHSState& s) { return step_2hs(s, cfg.dt); },
          [](const TwoHSState& s) { return std::vector<RealField>{s.u(), s.sigma()}; },
          [](const TwoHSState& s) {
            return std::map<std::string, double>{
                {"sigma_mean", integrate(s.sigma())},
                {"energy", 0.25 * integrate(RealField(spectral_derivative(s.u()).square() +
                                                      s.sigma().square()))}};
          },
          {"u", "sigma"});
    }
    case Equation::Filament: {
      const FilamentCurve c0(Vec3Field{init["gamma_x"], init["gamma_y"], init["gamma_z"]});
      return detail::drive(
          cfg, c0, [&](const FilamentCurve& c) { return step_filament(c, cfg.dt); },
          [](const FilamentCurve& c) {
            return std::vector<RealField>{c.points()[0], c.points()[1], c.points()[2]};
          },
          [](const FilamentCurve& c) {
            return std::map<std::string, double>{{"length", c.length()},
                                                 {"arclength_variation", c.arclength_variation()}};
          },
          {"gamma_x", "gamma_y", "gamma_z"});
    }
  }
  throw Error(ErrorKind::ConfigError, "unhandled equation");
}

inline std::string manifest_text(const RunManifest& m) { return m.to_json().dump(2) + "\n"; }

/// Writes manifest.json and one snapshot CSV per field into `dir`.
inline void write_run(const RunResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create '" + dir + "': " + ec.message());
  const std::filesystem::path base(dir);
  for (const auto& [name, table] : result.fields) {
    write_snapshot_csv((base / (name + ".csv")).string(), table);
  }
  write_text((base / "manifest.json").string(), manifest_text(result.manifest));
}

inline RunManifest read_manifest(const std::string& path) {
  const auto lines = read_lines(path);
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, "'" + path + "' is not valid JSON: " + e.what());
  }
  return RunManifest::from_json(j);
}

}  // namespace geohydro
