#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xorder/orders.hpp"
#include "xorder/system.hpp"

namespace xorder {

// ---------------------------------------------------------------------------
// Limit estimation along geometric sequences
// ---------------------------------------------------------------------------

enum class LimitStatus { Converged, DivergedToZero, DivergedToInfinity, NotConverged };

struct LimitEstimate {
  double value = quiet_nan;  // 0 / +inf for the diverged statuses
  LimitStatus status = LimitStatus::NotConverged;
  std::vector<double> trace;  // raw sequence values actually evaluated
  int steps = 0;

  bool converged() const { return status == LimitStatus::Converged; }
};

using LogTailFn = std::function<double(double)>;
using LogPdfFn = std::function<double(double)>;

/// lim tail(lambda x)/tail(x) along x_j = start * ratio^j, evaluated in log
/// space and Aitken-extrapolated. Declares 0 / +inf once the log ratio drifts
/// monotonically beyond +-30.
LimitEstimate variation_ratio_limit(const LogTailFn& log_tail, double lambda,
                                    const GeometricSequence& seq = {});

/// lim tail(x + delta)/tail(x): the constant-shift probe. A limit of 1 rules
/// the tail out of the exponentially-rapid class; any other limit is merely
/// consistent with membership.
LimitEstimate erpv_probe(const LogTailFn& log_tail, double delta,
                         const GeometricSequence& seq = {});

/// lim tail_F(x) / tail_G(c x).
LimitEstimate tail_ratio_limit(const LogTailFn& log_tail_f, const LogTailFn& log_tail_g,
                               double c, const GeometricSequence& seq = {});

// ---------------------------------------------------------------------------
// Asymptotic line of an increasing map
// ---------------------------------------------------------------------------

struct LinearAsymptote {
  double slope = quiet_nan;
  double intercept = quiet_nan;
  bool converged = false;        // residuals settled monotonically under tol
  std::vector<double> residuals; // |h(x) - (slope x + intercept)| trace
  int probes = 0;
};

/// Slope from secants (h(2x)-h(x))/x along a geometric sequence, intercept
/// from the extrapolated h(x) - slope*x; convergence requires the last three
/// residuals (at fresh probe points) non-increasing and below residual_tol.
LinearAsymptote asymptotic_line(const std::function<double(double)>& h,
                                const GeometricSequence& seq = {},
                                double residual_tol = 1e-3);

enum class LineVerdict { NotConvex, NotConcave, NeitherConvexNorConcave, Inconclusive };

/// intercept > tol: not convex; < -tol: not concave; ~0 and h nonlinear:
/// neither. Non-converged lines and linear h are inconclusive.
LineVerdict line_verdict(const LinearAsymptote& line, bool h_linear, double tol = 1e-3);

// ---------------------------------------------------------------------------
// Density sandwich
// ---------------------------------------------------------------------------

struct SandwichResult {
  bool pass = false;
  double first_failure_x = quiet_nan;
};

/// Verifies c*g(cx+eps) <= f(x) <= c*g(cx-eps) pointwise in log space over
/// the grid points at or beyond A.
SandwichResult density_sandwich_check(const LogPdfFn& log_pdf_f, const LogPdfFn& log_pdf_g,
                                      double c, double eps, double A,
                                      std::span<const double> grid);

// ---------------------------------------------------------------------------
// Variation classification
// ---------------------------------------------------------------------------

enum class VariationLabel {
  SlowlyVarying,
  RegularlyVarying,
  RapidlyVaryingMinusInf,
  ERPVMinusInf,
  Unknown,
};

enum class VariationOrigin { AnalyticTag, NumericEstimate };

struct VariationClass {
  VariationLabel label = VariationLabel::Unknown;
  VariationOrigin origin = VariationOrigin::NumericEstimate;
  std::optional<double> index;             // regular-variation index
  std::optional<double> index_uncertainty;
  // true only from analytic family tags; false when the shift probe
  // falsifies membership; empty when undecided.
  std::optional<bool> erpv;
};

/// Exponential-type systems (exponential, Weibull, integer-shape Gamma,
/// generalized exponential, powers of those, finite max/min compositions)
/// get the analytic exponentially-rapid tag. Bounded-support laws are
/// Unknown. Everything else is classified numerically from the tail.
VariationClass classify_variation(const System& s);

/// Numeric-only path used for raw tails.
VariationClass classify_variation_numeric(const LogTailFn& log_tail,
                                          const GeometricSequence& seq = {});

std::string variation_label_name(VariationLabel label);

// ---------------------------------------------------------------------------
// Comparability decision
// ---------------------------------------------------------------------------

enum class Relation {
  ConvexLess,      // X <=_c Y, numerically supported
  ConvexGreater,
  StarLess,        // star ordered, convex order undecided
  StarGreater,
  ScaleEquivalent,
  NonComparable,   // convex transform order fails in both directions
  Inconclusive,
};

std::string relation_name(Relation r);

struct Evidence {
  std::string kind;  // "scale", "leading_terms", "tail_ratio",
                     // "asymptotic_line", "pattern_witness", "shape_probe"
  std::string note;
  std::map<std::string, double> values;
  std::optional<PatternWitness> witness;
};

struct ComparisonVerdict {
  Relation relation = Relation::Inconclusive;
  std::optional<double> candidate_c;
  std::optional<double> scale_k;
  std::optional<Relation> star_relation;
  std::vector<Evidence> evidence;
  std::optional<LimitEstimate> tail_ratio;
  std::optional<LinearAsymptote> line;
  std::optional<ConvexOrderResult> sweeps;
};

struct DecisionConfig {
  SweepConfig sweep;
  GeometricSequence seq{};
  double ratio_tol = 1e-3;        // tail ratio must hit 1 within this
  double line_tol = 1e-3;         // slope/intercept corroboration tolerance
  double coeff_match_tol = 1e-6;  // leading-coefficient (multiplicity) match
  double exponent_match_tol = 1e-9;
};

/// Orchestrated pipeline: scale-equivalence short-circuit, symbolic leading
/// terms -> candidate c, analytic variation tags, tail-ratio limit with
/// asymptotic-line corroboration, and finally the sweep tests as fallback.
ComparisonVerdict decide_comparability(const System& X, const System& Y,
                                       const DecisionConfig& cfg = {});

}  // namespace xorder
