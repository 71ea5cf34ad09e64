#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geohydro/errors.hpp"
#include "geohydro/grid.hpp"

namespace geohydro {

using Json = nlohmann::json;

/// One gated quantity. It passes when lower <= value <= tolerance; a NaN
/// value never passes.
struct Metric {
  std::string label;
  double value = 0.0;
  double tolerance = 0.0;
  std::optional<double> lower;

  bool passed() const {
    if (std::isnan(value)) return false;
    if (lower && value < *lower) return false;
    return value <= tolerance;
  }
};

/// Outcome of one verification check.
class CheckReport {
 public:
  explicit CheckReport(std::string name, Json config = Json::object())
      : name_(std::move(name)), config_(std::move(config)) {}

  void add_metric(std::string label, double value, double tolerance) {
    metrics_.push_back({std::move(label), value, tolerance, std::nullopt});
  }

  /// Metric constrained to the interval [lower, upper].
  void add_bounded(std::string label, double value, double lower, double upper) {
    metrics_.push_back({std::move(label), value, upper, lower});
  }

  /// Sup and L2(dx/2pi) norms of a residual field, gated by the same tolerance.
  void add_residual(const std::string& label, const RealField& residual, double tolerance) {
    add_metric(label + ".sup", sup_norm(residual), tolerance);
    add_metric(label + ".l2", l2_norm(residual), tolerance);
  }

  /// Ungated diagnostic value.
  void note(const std::string& key, Json value) { info_[key] = std::move(value); }

  /// Records an aborting library error; a report with an error never passes.
  void fail_with(std::string error) { error_ = std::move(error); }

  void set_runtime(double seconds) { runtime_ = seconds; }

  bool passed() const {
    if (error_) return false;
    for (const auto& m : metrics_) {
      if (!m.passed()) return false;
    }
    return true;
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<Metric>& metrics() const noexcept { return metrics_; }
  const Json& info() const noexcept { return info_; }
  const std::optional<std::string>& error() const noexcept { return error_; }

  const Metric* find(const std::string& label) const {
    for (const auto& m : metrics_) {
      if (m.label == label) return &m;
    }
    return nullptr;
  }

  /// Keys are emitted in sorted order. Wall-clock runtime is left out unless
  /// requested so that repeated runs produce identical documents.
  Json to_json(bool include_runtime = false) const {
    Json metrics = Json::array();
    for (const auto& m : metrics_) {
      Json entry{{"label", m.label}, {"passed", m.passed()}, {"tolerance", m.tolerance}};
      entry["value"] = std::isfinite(m.value) ? Json(m.value) : Json(nullptr);
      if (m.lower) entry["lower"] = *m.lower;
      metrics.push_back(std::move(entry));
    }
    Json out{{"name", name_}, {"passed", passed()}, {"metrics", std::move(metrics)},
             {"config", config_}, {"info", info_}};
    if (error_) out["error"] = *error_;
    if (include_runtime) out["runtime_seconds"] = runtime_;
    return out;
  }

 private:
  std::string name_;
  Json config_;
  std::vector<Metric> metrics_;
  Json info_ = Json::object();
  std::optional<std::string> error_;
  double runtime_ = 0.0;
};

}  // namespace geohydro

namespace geohydro {

/// Configuration problems rather than check outcomes; run_check lets these propagate.
inline bool is_config_error(ErrorKind kind) {
  return kind == ErrorKind::ConfigError || kind == ErrorKind::ParseError ||
         kind == ErrorKind::InvalidGrid;
}

/// Runs `body(report)`, turning a library Error into a failing report and
/// recording the wall-clock time. Config errors are rethrown.
template <class Body>
CheckReport run_check(std::string name, Json config, Body&& body) {
  CheckReport report(std::move(name), std::move(config));
  const auto start = std::chrono::steady_clock::now();
  try {
    body(report);
  } catch (const Error& e) {
    if (is_config_error(e.kind())) throw;
    report.fail_with(e.what());
  }
  report.set_runtime(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

}  // namespace geohydro
