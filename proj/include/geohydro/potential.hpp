#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geohydro/density_types.hpp"
#include "geohydro/errors.hpp"
#include "geohydro/grid.hpp"

namespace geohydro {

/// Internal energy per unit mass e(rho). Affine: a*rho + b. Power: a*rho^gamma.
struct EnergyLaw {
  enum class Kind { Affine, Power };

  Kind kind = Kind::Affine;
  double a = 0.0;
  double b = 0.0;
  double gamma = 1.0;

  static EnergyLaw affine(double a, double b = 0.0) { return {Kind::Affine, a, b, 1.0}; }

  static EnergyLaw power(double a, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw Error(ErrorKind::ConfigError, "power-law exponent must be positive");
    }
    return {Kind::Power, a, 0.0, gamma};
  }

  /// The shallow-water law e = rho/2.
  static EnergyLaw shallow_water() { return affine(0.5, 0.0); }

  RealField energy(const RealField& rho) const {
    if (kind == Kind::Affine) return a * rho + b;
    return a * rho.pow(gamma);
  }

  RealField denergy(const RealField& rho) const {
    if (kind == Kind::Affine) return RealField::Constant(rho.size(), a);
    return a * gamma * rho.pow(gamma - 1.0);
  }

  /// e + rho e', the variational derivative of the integral of e(rho) rho.
  RealField enthalpy(const RealField& rho) const { return energy(rho) + rho * denergy(rho); }

  /// P = e' rho^2.
  RealField pressure(const RealField& rho) const { return denergy(rho) * rho.square(); }
};

/// Nonlinearity f(a) of the Schrödinger family together with its primitive F, F(0) = 0
/// except for the shifted law where F = kappa (a - 1)^3 / 6.
struct NonlinearityLaw {
  enum class Kind { Zero, Linear, Power, ShiftedQuadratic };

  Kind kind = Kind::Zero;
  double kappa = 0.0;
  double p = 1.0;

  static NonlinearityLaw zero() { return {}; }
  /// f(a) = kappa a (cubic NLS).
  static NonlinearityLaw linear(double kappa) { return {Kind::Linear, kappa, 1.0}; }
  /// f(a) = kappa a^p.
  static NonlinearityLaw power(double kappa, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::ConfigError, "nonlinearity exponent must be positive");
    }
    return {Kind::Power, kappa, p};
  }
  /// f(a) = kappa (a - 1)^2 / 2.
  static NonlinearityLaw shifted_quadratic(double kappa) {
    return {Kind::ShiftedQuadratic, kappa, 2.0};
  }

  bool is_zero() const { return kind == Kind::Zero || kappa == 0.0; }

  RealField f(const RealField& a) const {
    switch (kind) {
      case Kind::Zero: return RealField::Zero(a.size());
      case Kind::Linear: return kappa * a;
      case Kind::Power: return kappa * a.pow(p);
      case Kind::ShiftedQuadratic: return 0.5 * kappa * (a - 1.0).square();
    }
    return RealField::Zero(a.size());
  }

  RealField primitive(const RealField& a) const {
    switch (kind) {
      case Kind::Zero: return RealField::Zero(a.size());
      case Kind::Linear: return 0.5 * kappa * a.square();
      case Kind::Power: return kappa * a.pow(p + 1.0) / (p + 1.0);
      case Kind::ShiftedQuadratic: return kappa * (a - 1.0).cube() / 6.0;
    }
    return RealField::Zero(a.size());
  }
};

/// Potential functional on densities, a weighted sum of
///   classical    c * int V rho
///   barotropic   c * int e(rho) rho
///   quantum      c * I(rho),  I = 1/8 int |rho'|^2 / rho
///   integral-F   c * int F(rho)
class PotentialSpec {
 public:
  struct Classical {
    RealField V;
    double coeff = 1.0;
  };
  struct Barotropic {
    EnergyLaw law;
    double coeff = 1.0;
  };
  struct Quantum {
    double coeff = 1.0;
  };
  struct IntegralF {
    NonlinearityLaw law;
    double coeff = 1.0;
  };
  using Term = std::variant<Classical, Barotropic, Quantum, IntegralF>;

  PotentialSpec() = default;

  PotentialSpec& add_classical(RealField V, double coeff = 1.0) {
    check_finite(coeff);
    if (!V.allFinite()) throw Error(ErrorKind::ConfigError, "potential V must be finite");
    terms_.emplace_back(Classical{std::move(V), coeff});
    return *this;
  }
  PotentialSpec& add_barotropic(EnergyLaw law, double coeff = 1.0) {
    check_finite(coeff);
    terms_.emplace_back(Barotropic{law, coeff});
    return *this;
  }
  PotentialSpec& add_quantum(double coeff) {
    check_finite(coeff);
    terms_.emplace_back(Quantum{coeff});
    return *this;
  }
  PotentialSpec& add_integral(NonlinearityLaw law, double coeff = 1.0) {
    check_finite(coeff);
    terms_.emplace_back(IntegralF{law, coeff});
    return *this;
  }

  /// Same terms with every coefficient multiplied by `factor`.
  PotentialSpec scaled(double factor) const {
    PotentialSpec out = *this;
    for (auto& term : out.terms_) std::visit([&](auto& t) { t.coeff *= factor; }, term);
    return out;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

 private:
  static void check_finite(double c) {
    if (!std::isfinite(c)) throw Error(ErrorKind::ConfigError, "potential coefficient not finite");
  }

  std::vector<Term> terms_;
};

/// Fisher information I(rho) = 1/8 int rho'^2 / rho.
inline double fisher_information(const DensityField& density) {
  const RealField& rho = density.values();
  const RealField drho = spectral_derivative(rho);
  return 0.125 * integrate(RealField(drho.square() / rho));
}

/// Variational derivative of the potential with respect to the density.
inline RealField potential_derivative(const PotentialSpec& spec, const DensityField& density) {
  const RealField& rho = density.values();
  RealField out = RealField::Zero(rho.size());
  for (const auto& term : spec.terms()) {
    if (const auto* t = std::get_if<PotentialSpec::Classical>(&term)) {
      require_same_shape(t->V, rho);
      out += t->coeff * t->V;
    } else if (const auto* t = std::get_if<PotentialSpec::Barotropic>(&term)) {
      out += t->coeff * t->law.enthalpy(rho);
    } else if (const auto* t = std::get_if<PotentialSpec::Quantum>(&term)) {
      const RealField root = rho.sqrt();
      out -= 0.5 * t->coeff * spectral_derivative(root, 2) / root;
    } else if (const auto* t = std::get_if<PotentialSpec::IntegralF>(&term)) {
      out += t->coeff * t->law.f(rho);
    }
  }
  return out;
}

inline double potential_value(const PotentialSpec& spec, const DensityField& density) {
  const RealField& rho = density.values();
  double value = 0.0;
  for (const auto& term : spec.terms()) {
    if (const auto* t = std::get_if<PotentialSpec::Classical>(&term)) {
      require_same_shape(t->V, rho);
      value += t->coeff * integrate(RealField(t->V * rho));
    } else if (const auto* t = std::get_if<PotentialSpec::Barotropic>(&term)) {
      value += t->coeff * integrate(RealField(t->law.energy(rho) * rho));
    } else if (const auto* t = std::get_if<PotentialSpec::Quantum>(&term)) {
      value += t->coeff * fisher_information(density);
    } else if (const auto* t = std::get_if<PotentialSpec::IntegralF>(&term)) {
      value += t->coeff * integrate(t->law.primitive(rho));
    }
  }
  return value;
}

/// (dU/drho) * rho written in the square-root chart rho = f^2. No division by
/// f occurs, so the result stays smooth where f changes sign.
inline RealField potential_force_sphere(const PotentialSpec& spec, const RealField& f) {
  const RealField rho = f.square();
  RealField out = RealField::Zero(f.size());
  for (const auto& term : spec.terms()) {
    if (const auto* t = std::get_if<PotentialSpec::Classical>(&term)) {
      require_same_shape(t->V, f);
      out += t->coeff * t->V * rho;
    } else if (const auto* t = std::get_if<PotentialSpec::Barotropic>(&term)) {
      out += t->coeff * t->law.enthalpy(rho) * rho;
    } else if (const auto* t = std::get_if<PotentialSpec::Quantum>(&term)) {
      out -= 0.5 * t->coeff * spectral_derivative(f, 2) * f;
    } else if (const auto* t = std::get_if<PotentialSpec::IntegralF>(&term)) {
      out += t->coeff * t->law.f(rho) * rho;
    }
  }
  return out;
}

}  // namespace geohydro
