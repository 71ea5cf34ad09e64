#pragma once

#include <array>
#include <cstddef>

#include "geohydro/grid.hpp"

namespace geohydro {

template <std::size_t K>
using FieldPack = std::array<RealField, K>;

/// Classical four-stage Runge-Kutta step for y' = rhs(y) on a pack of fields.
template <std::size_t K, class Rhs>
FieldPack<K> rk4_step(const FieldPack<K>& y, double dt, Rhs&& rhs) {
  auto shifted = [&](const FieldPack<K>& k, double h) {
    FieldPack<K> out;
    for (std::size_t i = 0; i < K; ++i) out[i] = y[i] + h * k[i];
    return out;
  };
  const FieldPack<K> k1 = rhs(y);
  const FieldPack<K> k2 = rhs(shifted(k1, 0.5 * dt));
  const FieldPack<K> k3 = rhs(shifted(k2, 0.5 * dt));
  const FieldPack<K> k4 = rhs(shifted(k3, dt));
  FieldPack<K> out;
  for (std::size_t i = 0; i < K; ++i) {
    out[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace geohydro
