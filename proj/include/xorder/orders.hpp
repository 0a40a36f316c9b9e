#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xorder/sweep.hpp"
#include "xorder/system.hpp"

namespace xorder {

// ---------------------------------------------------------------------------
// Sign patterns
// ---------------------------------------------------------------------------

/// Collapsed sign sequence of a sampled function. Samples within
/// eps * max|v| of zero are suppressed; suppressed runs between opposite
/// signs count as a single crossing (the zeros simply drop out).
struct SignPattern {
  std::string pattern;        // e.g. "-,+"; empty when everything suppressed
  double epsilon = 0.0;       // relative suppression tolerance used
  std::size_t suppressed = 0;

  bool empty() const { return pattern.empty(); }
};

SignPattern sign_pattern(std::span<const double> values, double eps_rel);

/// X <=_* Y admits per-a patterns "", "-", "+", "-,+".
bool star_pattern_admissible(const std::string& pattern);

/// X <=_c Y admits any subsequence of "+,-,+":
/// "", "+", "-", "+,-", "-,+", "+,-,+".
bool convex_pattern_admissible(const std::string& pattern);

// ---------------------------------------------------------------------------
// Quantile composition and shape probes
// ---------------------------------------------------------------------------

/// h(x) = tail_Y^{-1}(tail_X(x)), computed through log tails so the
/// composition survives far beyond linear-space underflow. h(0) = 0 and h is
/// nondecreasing.
double quantile_compose(const System& X, const System& Y, double x);

enum class ShapeMode { Convex, Star };
enum class ShapeResult { Holds, HoldsReversed, Neither, Inconclusive };

/// Convex mode inspects divided second differences of h; star mode inspects
/// the monotonicity of h(x)/x. Neither requires witnesses of both signs
/// beyond the relative tolerance. Needs at least 64 grid points.
ShapeResult shape_probe(std::span<const double> xs, std::span<const double> hs,
                        ShapeMode mode, double rel_tol = 1e-6);

// ---------------------------------------------------------------------------
// Sweep-based order tests
// ---------------------------------------------------------------------------

struct SweepConfig {
  std::size_t grid_size = 4096;  // x samples per (a,b) cell
  double p_lo = 1e-8;            // grid starts at this lower quantile
  double tail_hi = 1e-10;        // ... and ends where both tails reach this
  std::size_t a_points = 64;
  double a_min = 0.05, a_max = 20.0;
  std::size_t b_points = 33;     // odd count keeps b = 0 in the sweep
  double b_span_medians = 5.0;   // b ranges over [-B, B], B = this * median
  double sign_eps = 1e-9;
  std::size_t refine_factor = 4;
  double x_cap = 1e6;            // grid ceiling when a quantile is unreachable
  Execution execution = Execution::OpenMP;
};

/// A confirmed violating cell, re-checkable from the recorded grid.
struct PatternWitness {
  double a = 1.0;
  double b = 0.0;
  SignPattern pattern;
  double x_lo = 0.0, x_hi = 0.0;
  std::size_t points = 0;  // refined sample count that confirmed the witness
};

struct DirectionResult {
  bool violated = false;
  std::vector<PatternWitness> witnesses;
  std::size_t cells = 0;  // sweep cells examined
};

struct StarOrderResult {
  bool holds = false;  // no violation across the sweep (numerical support)
  DirectionResult detail;
};

/// Tests X <=_* Y: for every a in the sweep, the sign pattern of
/// tail_Y(x) - tail_X(a x) must stay admissible. Violations are re-verified
/// on a locally refined grid before they are reported.
StarOrderResult star_order_test(const System& X, const System& Y,
                                const SweepConfig& cfg = {});

enum class PairOrdering { ForwardHolds, ReverseHolds, BothViolated, BothUnviolated };

struct ConvexOrderResult {
  DirectionResult forward;  // X <=_c Y
  DirectionResult reverse;  // Y <=_c X
  PairOrdering summary = PairOrdering::BothUnviolated;
  bool used_star_shortcut = false;
  bool star_forward_holds = false;
  bool star_reverse_holds = false;
};

/// Tests both directions of X <=_c Y over the (a, b) sweep with
/// V(x) = tail_Y(x) - tail_X(a x + b). With use_star_shortcut, a direction
/// whose star order already holds restricts its sweep to b >= 0.
ConvexOrderResult convex_order_test(const System& X, const System& Y,
                                    const SweepConfig& cfg = {},
                                    bool use_star_shortcut = false);

/// The x grid both order tests sample on: log-spaced between the smaller
/// p_lo-quantile and the larger point where either tail reaches tail_hi,
/// capped at x_cap for heavy tails.
std::vector<double> comparison_grid(const System& X, const System& Y,
                                    const SweepConfig& cfg);

// ---------------------------------------------------------------------------
// Saunders-Moran criterion
// ---------------------------------------------------------------------------

/// One-parameter family F_alpha with enough structure to differentiate in
/// the parameter: exact for exponent-power and scale families, central
/// differences otherwise.
class ParametricFamily {
 public:
  /// F_alpha(x) = base.cdf(x)^alpha.
  static ParametricFamily power_exponent(Dist base);
  /// F_lambda(x) = unit.cdf(lambda * x); D(lambda, x) = 1/lambda exactly.
  static ParametricFamily scale(Dist unit);
  /// Arbitrary maker; the alpha-derivative falls back to central differences.
  static ParametricFamily generic(std::function<Dist(double)> make);

  Dist member(double alpha) const;
  enum class Kind { PowerExponent, Scale, Generic };
  Kind kind() const { return kind_; }
  const Dist& base() const;

 private:
  ParametricFamily(Kind k, std::function<Dist(double)> make);
  Kind kind_;
  std::function<Dist(double)> make_;
  std::optional<Dist> base_;
};

/// D(alpha, x) = (d/dalpha F_alpha(x)) / (x * d/dx F_alpha(x)). Throws
/// domain_error where the density vanishes (singular point).
double saunders_moran_D(const ParametricFamily& family, double alpha, double x);

enum class StarFamilyOrdering {
  IncreasingInStar,     // alpha1 <= alpha2 implies F_alpha1 <=_* F_alpha2
  DecreasingInStar,     // larger parameter is <=_*-smaller
  EquivalentInStar,     // members are star-equivalent
  NonComparableInStar,  // D not monotone in x
};

/// Monotonicity of x -> D(alpha, x) on the grid decides the family's star
/// ordering; checked at both parameter values, disagreement is reported as
/// non-comparable.
StarFamilyOrdering sm_order_test(const ParametricFamily& family, double alpha1,
                                 double alpha2, std::span<const double> grid,
                                 double rel_tol = 1e-7);

/// Default probe grid for sm_order_test over the family member at alpha.
std::vector<double> sm_default_grid(const ParametricFamily& family, double alpha,
                                    std::size_t points = 512);

}  // namespace xorder
