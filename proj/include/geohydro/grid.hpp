#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "geohydro/errors.hpp"
#include "geohydro/fft.hpp"

namespace geohydro {

using RealField = Eigen::ArrayXd;
using ComplexField = Eigen::ArrayXcd;
using complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Absolute tolerance used for every "mean zero" precondition.
inline constexpr double kMeanZeroTol = 1e-10;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Uniform grid on the circle [0, 2pi) with the normalized measure dx/2pi.
/// Quadrature weight is 1/n per node, so integrating a constant returns it.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(std::size_t n) : n_(n) {
    if (n < 16 || !is_power_of_two(n)) {
      throw Error(ErrorKind::InvalidGrid,
                  "grid size must be a power of two >= 16, got " + std::to_string(n));
    }
  }

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(n_); }
  double node(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }

  RealField nodes() const {
    RealField x(static_cast<Eigen::Index>(n_));
    for (std::size_t j = 0; j < n_; ++j) x[static_cast<Eigen::Index>(j)] = node(j);
    return x;
  }

  RealField constant(double c) const {
    return RealField::Constant(static_cast<Eigen::Index>(n_), c);
  }

  template <class Fn>
  auto sample(Fn&& fn) const {
    using Value = decltype(fn(0.0));
    Eigen::Array<Value, Eigen::Dynamic, 1> out(static_cast<Eigen::Index>(n_));
    for (std::size_t j = 0; j < n_; ++j) out[static_cast<Eigen::Index>(j)] = fn(node(j));
    return out;
  }

  template <class Derived>
  void require_shape(const Eigen::ArrayBase<Derived>& f) const {
    if (static_cast<std::size_t>(f.size()) != n_) {
      throw Error(ErrorKind::ShapeMismatch, "field has " + std::to_string(f.size()) +
                                                " samples, grid has " + std::to_string(n_));
    }
  }

  bool operator==(const PeriodicGrid&) const = default;

 private:
  std::size_t n_;
};

/// Grid implied by a field's sample count (validates the size).
template <class Derived>
PeriodicGrid grid_of(const Eigen::ArrayBase<Derived>& f) {
  return PeriodicGrid(static_cast<std::size_t>(f.size()));
}

template <class A, class B>
void require_same_shape(const Eigen::ArrayBase<A>& a, const Eigen::ArrayBase<B>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::ShapeMismatch, "fields have " + std::to_string(a.size()) + " and " +
                                              std::to_string(b.size()) + " samples");
  }
}

/// Signed integer wavenumber of DFT slot j; the Nyquist slot maps to -n/2.
inline double wavenumber(std::size_t j, std::size_t n) {
  return j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
}

namespace detail {

inline complex ipow(complex z, int order) {
  complex out = 1.0;
  for (int i = 0; i < order; ++i) out *= z;
  return out;
}

inline ComplexField derivative_modes(ComplexField c, int order) {
  const auto n = static_cast<std::size_t>(c.size());
  const complex ik_unit(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == n / 2 && order % 2 == 1) {
      c[static_cast<Eigen::Index>(j)] = 0.0;
      continue;
    }
    c[static_cast<Eigen::Index>(j)] *= ipow(ik_unit * wavenumber(j, n), order);
  }
  return c;
}

}  // namespace detail

/// Fourier differentiation of a periodic field. The Nyquist mode is dropped
/// for odd orders so real input stays real.
inline ComplexField spectral_derivative(const ComplexField& f, int order = 1) {
  if (order < 1) throw Error(ErrorKind::ConfigError, "derivative order must be >= 1");
  grid_of(f);
  return ifft(detail::derivative_modes(fft(f), order));
}

inline RealField spectral_derivative(const RealField& f, int order = 1) {
  return spectral_derivative(ComplexField(f.cast<complex>()), order).real();
}

/// Integral against dx/2pi, i.e. the sample mean.
template <class Derived>
auto integrate(const Eigen::ArrayBase<Derived>& f) {
  return f.mean();
}

/// Hermitian L2(dx/2pi) product, conjugate-linear in the first slot.
inline complex inner(const ComplexField& a, const ComplexField& b) {
  require_same_shape(a, b);
  return (a.conjugate() * b).mean();
}

inline double l2_norm(const ComplexField& f) { return std::sqrt(f.abs2().mean()); }
inline double l2_norm(const RealField& f) { return std::sqrt(f.square().mean()); }
inline double sup_norm(const RealField& f) { return f.abs().maxCoeff(); }
inline double sup_norm(const ComplexField& f) { return f.abs().maxCoeff(); }

/// Mean-zero periodic antiderivative. Requires the input to have zero mean.
inline RealField antiderivative(const RealField& f) {
  const auto n = static_cast<std::size_t>(grid_of(f).size());
  const double mean = integrate(f);
  if (std::abs(mean) > kMeanZeroTol) {
    throw Error(ErrorKind::NonZeroMean,
                "antiderivative needs a mean-zero field, mean = " + std::to_string(mean));
  }
  ComplexField c = fft(f.cast<complex>());
  const complex i_unit(0.0, 1.0);
  c[0] = 0.0;
  c[static_cast<Eigen::Index>(n / 2)] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    if (j == n / 2) continue;
    c[static_cast<Eigen::Index>(j)] /= i_unit * wavenumber(j, n);
  }
  return ifft(c).real();
}

/// Inverse of the inertia operator u -> mean(u) - u''.
inline RealField invert_inertia(const RealField& m) {
  const auto n = static_cast<std::size_t>(grid_of(m).size());
  ComplexField c = fft(m.cast<complex>());
  for (std::size_t j = 1; j < n; ++j) {
    const double k = wavenumber(j, n);
    c[static_cast<Eigen::Index>(j)] /= k * k;
  }
  return ifft(c).real();
}

/// The inertia operator itself, A u = mean(u) - u''.
inline RealField apply_inertia(const RealField& u) {
  return integrate(u) - spectral_derivative(u, 2);
}

/// Solves (rho theta')' = rhs for mean-zero theta on the circle.
inline RealField solve_weighted_poisson(const RealField& rho, const RealField& rhs) {
  require_same_shape(rho, rhs);
  if (!(rho.minCoeff() > 0.0)) {
    throw Error(ErrorKind::NonPositiveDensity, "weighted Poisson solve needs rho > 0");
  }
  const RealField r = antiderivative(rhs);
  const RealField inv_rho = rho.inverse();
  const double c = -integrate(RealField(r * inv_rho)) / integrate(inv_rho);
  RealField dtheta = (r + c) * inv_rho;
  // dtheta has zero mean analytically; remove round-off before integrating.
  dtheta -= integrate(dtheta);
  return antiderivative(dtheta);
}

/// Trigonometric interpolant of grid samples, evaluable at arbitrary points.
/// The Nyquist coefficient is split evenly between +n/2 and -n/2.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const ComplexField& samples) : coeffs_(fft(samples)) {
    grid_of(samples);
    coeffs_ /= static_cast<double>(samples.size());
  }
  explicit TrigInterpolant(const RealField& samples)
      : TrigInterpolant(ComplexField(samples.cast<complex>())) {}

  complex value(double x) const { return sum(x, 0); }
  complex derivative(double x, int order = 1) const { return sum(x, order); }

 private:
  complex sum(double x, int order) const {
    const auto n = static_cast<std::size_t>(coeffs_.size());
    const complex i_unit(0.0, 1.0);
    const complex step = std::exp(i_unit * x);
    complex acc = coeffs_[0] * (order == 0 ? 1.0 : 0.0);
    // e^{ikx} for k = 1..n/2-1 by recurrence, re-anchored every 16 terms
    complex pos = 1.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
      pos = (k % 16 == 0) ? std::exp(i_unit * (static_cast<double>(k) * x)) : pos * step;
      const double kd = static_cast<double>(k);
      acc += coeffs_[static_cast<Eigen::Index>(k)] * detail::ipow(i_unit * kd, order) * pos;
      acc += coeffs_[static_cast<Eigen::Index>(n - k)] * detail::ipow(-i_unit * kd, order) *
             std::conj(pos);
    }
    const double kn = static_cast<double>(n / 2);
    const complex nyq = std::exp(i_unit * (kn * x));
    acc += 0.5 * coeffs_[static_cast<Eigen::Index>(n / 2)] *
           (detail::ipow(i_unit * kn, order) * nyq + detail::ipow(-i_unit * kn, order) * std::conj(nyq));
    return acc;
  }

  ComplexField coeffs_;
};

/// Inverts a monotone map phi(x) = x + g(x) with periodic g (phi' > 0) at
/// the target value y, using safeguarded Newton iteration.
template <class Map, class MapDerivative>
double invert_circle_map(const Map& phi, const MapDerivative& dphi, double y,
                         double tol = 1e-15) {
  // bracket: phi is increasing and phi(x) - x is bounded by |g|
  double x = y;
  double lo = y - kTwoPi;
  double hi = y + kTwoPi;
  for (int it = 0; it < 100; ++it) {
    const double r = phi(x) - y;
    if (r > 0) hi = std::min(hi, x);
    else lo = std::max(lo, x);
    const double step = r / dphi(x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace geohydro
