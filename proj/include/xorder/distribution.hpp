#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "xorder/common.hpp"

namespace xorder {

class Dist;

// ---------------------------------------------------------------------------
// Families
//
// Every law lives on [0, inf): F(0) = 0. The log-tail is the evaluation
// primitive; cdf/tail/pdf derive from it so that values stay meaningful far
// into the tail (the comparison engines probe x up to ~1e12).
// ---------------------------------------------------------------------------

struct Exponential {
  double rate;  // tail = exp(-rate*x)
};

struct Weibull {
  double shape;
  double scale;  // multiplies x: tail = exp(-(scale*x)^shape)
};

struct GammaInt {
  int shape;    // integer shape >= 1
  double rate;  // tail = exp(-rate*x) * sum_{l<shape} (rate*x)^l / l!
};

struct GenExponential {
  double shape;
  double rate;  // cdf = (1 - exp(-rate*x))^shape
};

struct UQuadratic {
  double left;   // support [left, right], density k*(x-mid)^2
  double right;  // k = 12/(right-left)^3, mid = (left+right)/2
};

struct PowerOf {
  std::shared_ptr<const Dist> base;
  double exponent;  // cdf = base.cdf^exponent
};

struct TailPowerOf {
  std::shared_ptr<const Dist> base;
  double exponent;  // tail = base.tail^exponent
};

/// Named raw tails used as counterexample fixtures for the variation engine.
enum class BuiltinTailKind { InvQuadratic, InvLog, ExpLogSquared };

struct BuiltinTail {
  BuiltinTailKind kind;
};

using DistFamily = std::variant<Exponential, Weibull, GammaInt, GenExponential,
                                UQuadratic, PowerOf, TailPowerOf, BuiltinTail>;

enum class Functional { Cdf, Tail, LogTail, Pdf, FailureRate };

// ---------------------------------------------------------------------------
// Dist: immutable single-distribution law
// ---------------------------------------------------------------------------

class Dist {
 public:
  static Dist exponential(double rate);
  static Dist weibull(double shape, double scale);
  static Dist gamma_int(int shape, double rate);
  static Dist gen_exponential(double shape, double rate);
  static Dist u_quadratic(double left, double right);
  static Dist power_of(Dist base, double exponent);
  static Dist tail_power_of(Dist base, double exponent);
  static Dist builtin_tail(BuiltinTailKind kind);
  static Dist builtin_tail(const std::string& name);

  double log_tail(double x) const;
  double tail(double x) const { return std::exp(log_tail(x)); }
  double cdf(double x) const { return -std::expm1(log_tail(x)); }
  double log_pdf(double x) const;
  double pdf(double x) const { return std::exp(log_pdf(x)); }

  /// pdf/tail; throws domain_error where the tail vanishes.
  double failure_rate(double x) const;

  /// Inverse of cdf on (0,1). Closed form where the family admits one,
  /// bracketed bisection otherwise.
  double quantile(double p) const;

  /// x such that log_tail(x) == lt, for lt in (-inf, 0]. This is the
  /// underflow-free inversion primitive behind quantile composition.
  double inverse_log_tail(double lt) const;

  /// Support endpoints; left is 0 except for shifted bounded families.
  double support_left() const;
  double support_right() const;

  /// Law of k*X for k > 0 (same family, rescaled parameters).
  Dist scaled(double k) const;

  const DistFamily& family() const { return *fam_; }
  std::string family_name() const;

  bool operator==(const Dist& other) const;

 private:
  explicit Dist(DistFamily f);
  std::shared_ptr<const DistFamily> fam_;
};

/// Single-call evaluator used by the CLI and the document layer.
double evaluate(const Dist& d, double x, Functional f);

/// Bracketed bisection for x with lt(x) == target, lt monotone decreasing
/// from lt(0) = 0. The bracket doubles from 1 and gives up past 1e12.
double invert_monotone_log_tail(const std::function<double(double)>& lt, double target);

// ---------------------------------------------------------------------------
// Failure-rate classification
// ---------------------------------------------------------------------------

enum class AgeingLabel { IFR, DFR, ConstantFR, NonMonotoneFR, Inconclusive };

struct AgeingClass {
  AgeingLabel label = AgeingLabel::Inconclusive;
  double tolerance = 0.0;   // relative tolerance applied to differences
  std::size_t points = 0;   // probe grid size
  double lo = 0.0, hi = 0.0;  // probe range actually used
};

/// Probe description for the default grid. Endpoints are excluded by
/// `endpoint_margin` of the range; for unbounded support the range is the
/// [margin, 1-margin] quantile span.
struct FailureRateProbe {
  std::size_t points = 512;
  double endpoint_margin = 1e-6;
  double rel_tol = 1e-9;
};

AgeingClass classify_failure_rate(const Dist& d, const FailureRateProbe& probe = {});
AgeingClass classify_failure_rate(const Dist& d, std::span<const double> grid,
                                  double rel_tol = 1e-9);

// ---------------------------------------------------------------------------
// Scale equivalence
// ---------------------------------------------------------------------------

/// Returns k > 0 with F_a(x) = F_b(k*x) for all x when both laws are in the
/// same family up to scale (decided analytically on the parameters, never by
/// sampling); std::nullopt otherwise. PowerOf(Exponential) is canonicalized
/// to GenExponential before comparing.
std::optional<double> scale_equivalent(const Dist& a, const Dist& b);

}  // namespace xorder
