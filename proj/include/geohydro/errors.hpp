#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geohydro {

enum class ErrorKind {
  InvalidGrid,
  ShapeMismatch,
  NonZeroMean,
  NonPositiveDensity,
  NonPositiveField,
  MassNotUnit,
  NotNormalized,
  ParseError,
  EvalError,
  AntipodalEndpoints,
  VanishingModulus,
  NonzeroWinding,
  NonHorizontal,
  ZeroVelocity,
  VacuumFormation,
  ArclengthDrift,
  VanishingCurvature,
  NonzeroTotalTorsion,
  DegenerateCurve,
  MissingSnapshots,
  ConfigError,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::NonPositiveField: return "NonPositiveField";
    case ErrorKind::MassNotUnit: return "MassNotUnit";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EvalError: return "EvalError";
    case ErrorKind::AntipodalEndpoints: return "AntipodalEndpoints";
    case ErrorKind::VanishingModulus: return "VanishingModulus";
    case ErrorKind::NonzeroWinding: return "NonzeroWinding";
    case ErrorKind::NonHorizontal: return "NonHorizontal";
    case ErrorKind::ZeroVelocity: return "ZeroVelocity";
    case ErrorKind::VacuumFormation: return "VacuumFormation";
    case ErrorKind::ArclengthDrift: return "ArclengthDrift";
    case ErrorKind::VanishingCurvature: return "VanishingCurvature";
    case ErrorKind::NonzeroTotalTorsion: return "NonzeroTotalTorsion";
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::MissingSnapshots: return "MissingSnapshots";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` identifies the failure class;
/// the message carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Expression syntax error; `offset()` is the byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorKind::ParseError, what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace geohydro
