#pragma once

#include <cmath>
#include <vector>

#include "xorder/common.hpp"

namespace xorder {

/// n points log-spaced on [lo, hi], endpoints included. Requires 0 < lo < hi.
inline std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) throw config_error("log_spaced: need 0 < lo < hi");
  if (n < 2) throw config_error("log_spaced: need at least 2 points");
  std::vector<double> xs(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    xs[i] = std::exp(llo + t * (lhi - llo));
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

/// n points linearly spaced on [lo, hi], endpoints included.
inline std::vector<double> linear_spaced(double lo, double hi, std::size_t n) {
  if (!(hi > lo)) throw config_error("linear_spaced: need lo < hi");
  if (n < 2) throw config_error("linear_spaced: need at least 2 points");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    xs[i] = lo + t * (hi - lo);
  }
  xs.back() = hi;
  return xs;
}

}  // namespace xorder
