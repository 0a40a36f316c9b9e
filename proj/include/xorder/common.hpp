#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xorder {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class of every exception thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed specification: invalid parameters or a bad document.
class validation_error : public error {
 public:
  using error::error;
};

/// Evaluation outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

/// Numeric range failures: whole-sequence underflow, unbounded quantile
/// brackets, overflowing curve evaluations.
class range_error : public error {
 public:
  using error::error;
};

/// Invalid run configuration (grid too small, non-positive tolerance, ...).
class config_error : public error {
 public:
  using error::error;
};

// ---------------------------------------------------------------------------
// Log-space primitives
// ---------------------------------------------------------------------------

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

/// log(1 - exp(x)) for x <= 0. Uses expm1 near zero and log1p far from it.
inline double log1mexp(double x) {
  if (x > 0.0) throw domain_error("log1mexp: argument must be <= 0");
  if (x == -inf) return 0.0;
  return x > -0.6931471805599453 ? std::log(-std::expm1(x))
                                 : std::log1p(-std::exp(x));
}

/// log(sum exp(x_i)); tolerates -inf entries, returns -inf for an empty span.
inline double log_sum_exp(std::span<const double> xs) {
  double m = -inf;
  for (double x : xs) m = std::max(m, x);
  if (m == -inf) return -inf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

/// A real number r = sign * exp(log_abs); sign == 0 encodes exactly zero.
struct SignedLog {
  double log_abs = -inf;
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  static SignedLog of(double v) {
    if (v == 0.0) return {};
    return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
  }
};

/// Sum of signed exponentials, computed against the largest magnitude so the
/// result stays meaningful when every term underflows in linear space.
inline SignedLog signed_log_sum(std::span<const SignedLog> terms) {
  double m = -inf;
  for (const auto& t : terms)
    if (t.sign != 0) m = std::max(m, t.log_abs);
  if (m == -inf) return {};
  double acc = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0) acc += t.sign * std::exp(t.log_abs - m);
  if (acc == 0.0) return {};
  return {m + std::log(std::fabs(acc)), acc > 0.0 ? 1 : -1};
}

/// exp(a) - exp(b) without forming either exponential when they are close.
inline double exp_diff(double a, double b) {
  if (a == b) return 0.0;
  double m = std::max(a, b);
  if (m == -inf) return 0.0;
  double d = -std::expm1(-std::fabs(a - b));  // 1 - e^{-|a-b|}, in (0,1]
  return (a > b ? 1.0 : -1.0) * std::exp(m) * d;
}

// ---------------------------------------------------------------------------
// Sequence extrapolation
// ---------------------------------------------------------------------------

/// One pass of Aitken delta-squared acceleration. Entries whose denominator
/// degenerates are passed through unchanged, so noisy tails do not explode.
inline std::vector<double> aitken_accelerate(const std::vector<double>& s) {
  if (s.size() < 3) return s;
  std::vector<double> out;
  out.reserve(s.size() - 2);
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    const double d1 = s[i + 1] - s[i];
    const double d2 = s[i + 2] - s[i + 1];
    const double den = d2 - d1;
    if (!std::isfinite(den) || std::fabs(den) < 1e-300 ||
        std::fabs(den) < 1e-12 * (std::fabs(d1) + std::fabs(d2)))
      out.push_back(s[i + 2]);
    else
      out.push_back(s[i + 2] - d2 * d2 / den);
  }
  return out;
}

/// Geometric probe sequence x_j = start * ratio^j, j = 0..steps-1.
struct GeometricSequence {
  double start = 1.0;
  double ratio = 2.0;
  int steps = 41;

  double at(int j) const { return start * std::pow(ratio, j); }
};

// ---------------------------------------------------------------------------
// Monotonicity of a sampled sequence
// ---------------------------------------------------------------------------

enum class Monotonicity { Increasing, Decreasing, Constant, NonMonotone };

/// Classifies successive differences against rel_tol * max|v|. Differences
/// within tolerance count as ties; all ties means Constant.
inline Monotonicity classify_monotonicity(std::span<const double> v, double rel_tol) {
  if (v.size() < 2) return Monotonicity::Constant;
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::fabs(x));
  const double tol = rel_tol * std::max(scale, 1e-300);
  bool up = false, down = false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    if (d > tol) up = true;
    else if (d < -tol) down = true;
  }
  if (up && down) return Monotonicity::NonMonotone;
  if (up) return Monotonicity::Increasing;
  if (down) return Monotonicity::Decreasing;
  return Monotonicity::Constant;
}

}  // namespace xorder
