#pragma once

// Command-line front end. Exit codes: 0 pass / success, 1 failed check or
// runtime failure, 2 usage, configuration, parse or precondition error.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "geohydro/io/csv.hpp"
#include "geohydro/run/simulate.hpp"
#include "geohydro/verify/checks.hpp"
#include "geohydro/verify/conservation.hpp"

namespace geohydro {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Errors that mean the input was unusable, as opposed to a run that failed.
inline bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::VacuumFormation:
    case ErrorKind::ArclengthDrift:
    case ErrorKind::VanishingCurvature:
    case ErrorKind::MissingSnapshots:
    case ErrorKind::EvalError:
      return false;
    default:
      return true;
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError,
                "'" + path + "' is not valid JSON (byte " + std::to_string(e.byte) + ")");
  }
}

/// Worker count for `verify all`: GEOHYDRO_THREADS when set, else the
/// hardware concurrency.
inline unsigned worker_count(std::size_t jobs) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GEOHYDRO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) {
      throw Error(ErrorKind::ConfigError, "GEOHYDRO_THREADS must be an integer in [1, 1024]");
    }
    workers = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs, 1)));
}

/// Runs the jobs on a small pool; results keep the job order.
template <class Job>
std::vector<CheckReport> run_pool(const std::vector<Job>& jobs, unsigned workers) {
  std::vector<std::optional<CheckReport>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        slots[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct CliStreams {
  std::ostream& out;
  std::ostream& err;
};

inline int cli_verify(const std::string& check, const std::string& config_path,
                      std::optional<double> tol, bool timing, CliStreams io) {
  if (check == "conservation") {
    if (config_path.empty()) {
      throw Error(ErrorKind::ConfigError, "verify conservation needs --config <manifest.json>");
    }
    RunManifest manifest = read_manifest(config_path);
    if (tol) {
      Json bounds = Json::object();
      for (const auto& [q, v] : manifest.snapshots.empty() ? std::map<std::string, double>{}
                                                          : manifest.snapshots.front().quantities) {
        (void)v;
        bounds[q] = *tol;
      }
      manifest.config["drift_bounds"] = bounds;
    }
    const CheckReport report = conservation_report(manifest);
    io.out << report.to_json(timing).dump(2) << "\n";
    return report.passed() ? kExitPass : kExitFail;
  }

  const Json file = config_path.empty() ? Json::object() : read_json_file(config_path);
  require_object(file, "config");
  const auto config_for = [&](const std::string& name, const Json& base) {
    Json cfg = base;
    if (tol) cfg["tolerance"] = *tol;
    (void)name;
    return cfg;
  };

  if (check == "all") {
    for (const auto& item : file.items()) {
      if (!is_check_name(item.key())) {
        throw Error(ErrorKind::ConfigError, "unknown check '" + item.key() + "' in config");
      }
    }
    // parse every config up front so that a bad one is reported before any work starts
    std::vector<std::function<CheckReport()>> jobs;
    for (const auto& name : check_names()) {
      const Json cfg = config_for(name, file.contains(name) ? file.at(name) : Json::object());
      jobs.push_back([name, cfg] { return run_named_check(name, cfg); });
    }
    const auto reports = run_pool(jobs, worker_count(jobs.size()));
    Json out = Json::array();
    bool all_passed = true;
    for (const auto& r : reports) {
      out.push_back(r.to_json(timing));
      all_passed = all_passed && r.passed();
    }
    io.out << out.dump(2) << "\n";
    return all_passed ? kExitPass : kExitFail;
  }

  if (!is_check_name(check)) throw Error(ErrorKind::ConfigError, "unknown check '" + check + "'");
  const CheckReport report = run_named_check(check, config_for(check, file));
  io.out << report.to_json(timing).dump(2) << "\n";
  return report.passed() ? kExitPass : kExitFail;
}

inline int cli_simulate(const std::string& equation, const std::string& config_path,
                        const std::string& out_dir, CliStreams io) {
  const RunConfig cfg = RunConfig::from_json(read_json_file(config_path), equation);
  const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
  const RunResult result = simulate(cfg);
  write_run(result, dir);
  io.out << "wrote " << result.manifest.snapshots.size() << " snapshots of " << equation
         << " to " << dir << "\n";
  return kExitPass;
}

inline int cli_transform(const std::string& kind, const std::string& in_path,
                         const std::string& out_path, CliStreams io) {
  const ProfileTable in = read_profile_csv(in_path);
  ProfileTable out;
  out.x = in.x;
  if (kind == "madelung") {
    const CotangentPoint p =
        CotangentPoint::gauge_fixed(DensityField(in.column("rho")), in.column("theta"));
    const ComplexField psi = madelung_forward(p).values();
    out.names = {"psi_re", "psi_im"};
    out.columns = {psi.real(), psi.imag()};
  } else if (kind == "madelung-inv") {
    const complex i_unit(0.0, 1.0);
    const WaveFunction psi(ComplexField(in.column("psi_re").cast<complex>() +
                                        i_unit * in.column("psi_im").cast<complex>()));
    const CotangentPoint p = madelung_inverse(psi);
    out.names = {"rho", "theta"};
    out.columns = {p.rho().values(), p.theta()};
  } else if (kind == "hasimoto") {
    const FilamentCurve curve(
        Vec3Field{in.column("gamma_x"), in.column("gamma_y"), in.column("gamma_z")});
    const ComplexField psi = hasimoto_transform(curve);
    out.names = {"psi_re", "psi_im"};
    out.columns = {psi.real(), psi.imag()};
  } else {
    throw Error(ErrorKind::ConfigError, "unknown transform '" + kind + "'");
  }
  write_profile_csv(out_path, out);
  io.out << "wrote " << out_path << "\n";
  return kExitPass;
}

inline int cli_geodesic(const std::string& kind, const std::string& config_path,
                        const std::string& out_dir, CliStreams io) {
  const Json j = read_json_file(config_path);
  const auto times = [](int samples, double t_final) {
    std::vector<double> t;
    for (int i = 0; i < samples; ++i) t.push_back(t_final * i / (samples - 1));
    return t;
  };
  std::vector<std::pair<std::string, SnapshotTable>> tables;
  Json summary{{"kind", kind}};
  std::string dir;

  if (kind == "fisher-rao") {
    reject_unknown_keys(j, {"n", "rho0", "rho1", "samples", "out_dir"}, "fisher-rao config");
    const PeriodicGrid grid(get_grid_size(j, "n", 64));
    const int samples = static_cast<int>(get_integer(j, "samples", 11));
    if (samples < 2) throw Error(ErrorKind::ConfigError, "'samples' must be at least 2");
    dir = get_string(j, "out_dir", "geodesic");
    const FisherRaoGeodesic geo(DensityField::normalized(get_expression(j, "rho0", "1", grid)),
                                DensityField::normalized(get_expression(j, "rho1", "1", grid)));
    SnapshotTable rho{{}, grid.nodes(), {}};
    for (double t : times(samples, 1.0)) {
      rho.times.push_back(t);
      rho.rows.push_back(geo.at(t).values());
    }
    tables.push_back({"rho", rho});
    summary["distance"] = geo.distance();
  } else if (kind == "fubini-study") {
    reject_unknown_keys(j, {"n", "rho0", "theta0", "rho_dot", "theta_dot", "t_final", "samples",
                            "out_dir"},
                        "fubini-study config");
    const PeriodicGrid grid(get_grid_size(j, "n", 64));
    const int samples = static_cast<int>(get_integer(j, "samples", 11));
    if (samples < 2) throw Error(ErrorKind::ConfigError, "'samples' must be at least 2");
    const double t_final = get_positive(j, "t_final", 1.0);
    dir = get_string(j, "out_dir", "geodesic");
    const CotangentPoint p = CotangentPoint::gauge_fixed(
        DensityField::normalized(get_expression(j, "rho0", "1", grid)),
        get_expression(j, "theta0", "0", grid));
    const CotangentTangent v{TangentDensity::projected(get_expression(j, "rho_dot", "0", grid)),
                             get_expression(j, "theta_dot", "0", grid)};
    const WaveFunction psi0 = madelung_forward(p);
    const FubiniStudyGeodesic geo(psi0,
                                  horizontal_part(psi0.values(), madelung_differential(p, v)));
    SnapshotTable re{{}, grid.nodes(), {}}, im{{}, grid.nodes(), {}};
    for (double t : times(samples, t_final)) {
      const ComplexField psi = geo.values(t);
      re.times.push_back(t);
      re.rows.push_back(psi.real());
      im.times.push_back(t);
      im.rows.push_back(psi.imag());
    }
    tables.push_back({"psi_re", re});
    tables.push_back({"psi_im", im});
    summary["speed"] = geo.speed();
  } else {
    throw Error(ErrorKind::ConfigError, "unknown geodesic '" + kind + "'");
  }

  if (!out_dir.empty()) dir = out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create '" + dir + "': " + ec.message());
  Json files = Json::array();
  for (const auto& [name, table] : tables) {
    write_snapshot_csv((std::filesystem::path(dir) / (name + ".csv")).string(), table);
    files.push_back(name + ".csv");
  }
  summary["files"] = files;
  io.out << summary.dump(2) << "\n";
  return kExitPass;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Spectral laboratory for geometric hydrodynamics on the circle", "geohydro"};
  app.require_subcommand(1);

  std::string equation, check, kind, config, out_dir, in_path, out_path;
  std::optional<double> tol;
  bool timing = false;

  auto* sim = app.add_subcommand("simulate", "Integrate one equation and write snapshots");
  sim->add_option("equation", equation, "schrodinger|hydro|barotropic|neumann|much|twohs|filament")
      ->required();
  sim->add_option("--config", config, "Run configuration (JSON)")->required();
  sim->add_option("--out-dir", out_dir, "Output directory (overrides the config)");

  auto* ver = app.add_subcommand("verify", "Run a verification check");
  ver->add_option("check", check, "check name, 'all' or 'conservation'")->required();
  ver->add_option("--config", config, "Check configuration, or a run manifest for 'conservation'");
  ver->add_option("--tol", tol, "Override the check tolerance");
  ver->add_flag("--timing", timing, "Include wall-clock runtimes in the report");

  auto* tr = app.add_subcommand("transform", "Apply a transform to a profile CSV");
  tr->add_option("kind", kind, "madelung|madelung-inv|hasimoto")->required();
  tr->add_option("--in", in_path, "Input profile CSV")->required();
  tr->add_option("--out", out_path, "Output profile CSV")->required();

  auto* geo = app.add_subcommand("geodesic", "Sample a closed-form geodesic");
  geo->add_option("kind", kind, "fisher-rao|fubini-study")->required();
  geo->add_option("--config", config, "Geodesic configuration (JSON)")->required();
  geo->add_option("--out-dir", out_dir, "Output directory (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const CliStreams io{out, err};
  try {
    if (sim->parsed()) return cli_simulate(equation, config, out_dir, io);
    if (ver->parsed()) return cli_verify(check, config, tol, timing, io);
    if (tr->parsed()) return cli_transform(kind, in_path, out_path, io);
    return cli_geodesic(kind, config, out_dir, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_usage_error(e.kind()) ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace geohydro
