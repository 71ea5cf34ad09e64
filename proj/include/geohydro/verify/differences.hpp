#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "geohydro/verify/report.hpp"

namespace geohydro {

/// Fourth-order central first derivative from samples at t-2h .. t+2h.
template <class T>
T central_first(const T& m2, const T& m1, const T& p1, const T& p2, double h) {
  return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
}

/// Fourth-order central second derivative from samples at t-2h .. t+2h.
template <class T>
T central_second(const T& m2, const T& m1, const T& c, const T& p1, const T& p2, double h) {
  return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
}

/// Gates a dt-halving study. errors[i] belongs to dt / 2^i. Each consecutive
/// pair must show log2(e_i / e_{i+1}) within [min_order, max_order], unless
/// the finer error is already below `floor`, in which case that pair is gated
/// on the floor instead (there is nothing left to converge).
inline void add_convergence(CheckReport& report, const std::string& label,
                            const std::vector<double>& errors, double min_order,
                            double floor,
                            double max_order = std::numeric_limits<double>::infinity()) {
  Json orders = Json::array();
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const std::string name = label + "[" + std::to_string(i) + "]";
    const double order = std::log2(errors[i] / errors[i + 1]);
    orders.push_back(std::isfinite(order) ? Json(order) : Json(nullptr));
    if (errors[i + 1] <= floor) {
      report.add_metric(name + ".floor", errors[i + 1], floor);
    } else {
      report.add_bounded(name, order, min_order, max_order);
    }
  }
  report.note(label + ".errors", errors);
  report.note(label + ".orders", orders);
}

}  // namespace geohydro
