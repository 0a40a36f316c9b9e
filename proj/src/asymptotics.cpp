#include "xorder/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "xorder/grid.hpp"

namespace xorder {

// ---------------------------------------------------------------------------
// Limit engine
// ---------------------------------------------------------------------------

namespace {

constexpr double kConvergeRel = 1e-4;  // last three pairwise within this
constexpr double kDivergeLog = 30.0;   // log-ratio drift declaring 0 / inf

bool pairwise_close(double a, double b, double c, double rel) {
  const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c), 1e-300});
  return std::fabs(a - b) <= rel * scale && std::fabs(b - c) <= rel * scale &&
         std::fabs(a - c) <= rel * scale;
}

// Shared driver: log_ratio_at(j) is the log of the quantity whose limit is
// wanted at probe j. Early exit avoids probing into floating-point dead
// zones once the sequence has settled.
LimitEstimate limit_from_log_sequence(const std::function<double(int)>& log_ratio_at,
                                      const GeometricSequence& seq) {
  LimitEstimate out;
  std::vector<double> d;  // log values
  for (int j = 0; j < seq.steps; ++j) {
    double dj;
    try {
      dj = log_ratio_at(j);
    } catch (const error&) {
      if (j == 0) throw;
      break;
    }
    if (std::isnan(dj)) {
      if (j == 0)
        throw range_error("limit probe: sequence underflowed immediately; "
                          "use a smaller start");
      break;
    }
    d.push_back(dj);
    out.trace.push_back(std::exp(dj));
    const std::size_t n = d.size();
    if (n >= 3) {
      const double a = d[n - 3], b = d[n - 2], c = d[n - 1];
      if (a < -kDivergeLog && b < a && c < b) {
        out.status = LimitStatus::DivergedToZero;
        out.value = 0.0;
        out.steps = static_cast<int>(n);
        return out;
      }
      if (a > kDivergeLog && b > a && c > b) {
        out.status = LimitStatus::DivergedToInfinity;
        out.value = inf;
        out.steps = static_cast<int>(n);
        return out;
      }
      if (pairwise_close(out.trace[n - 3], out.trace[n - 2], out.trace[n - 1],
                         kConvergeRel)) {
        out.status = LimitStatus::Converged;
        out.value = out.trace[n - 1];
        out.steps = static_cast<int>(n);
        return out;
      }
    }
  }
  out.steps = static_cast<int>(d.size());
  // Slowly settling sequences: two rounds of Aitken acceleration.
  const std::vector<double> a1 = aitken_accelerate(out.trace);
  const std::vector<double> a2 = aitken_accelerate(a1);
  if (a2.size() >= 3 &&
      pairwise_close(a2[a2.size() - 3], a2[a2.size() - 2], a2.back(), kConvergeRel)) {
    out.status = LimitStatus::Converged;
    out.value = a2.back();
    return out;
  }
  if (!out.trace.empty()) out.value = out.trace.back();
  return out;
}

}  // namespace

LimitEstimate variation_ratio_limit(const LogTailFn& log_tail, double lambda,
                                    const GeometricSequence& seq) {
  if (!(lambda > 0.0)) throw domain_error("variation_ratio_limit: lambda must be > 0");
  return limit_from_log_sequence(
      [&](int j) {
        const double x = seq.at(j);
        return log_tail(lambda * x) - log_tail(x);
      },
      seq);
}

LimitEstimate erpv_probe(const LogTailFn& log_tail, double delta,
                         const GeometricSequence& seq) {
  if (delta == 0.0) throw domain_error("erpv_probe: delta must be nonzero");
  return limit_from_log_sequence(
      [&](int j) {
        const double x = seq.at(j);
        return log_tail(x + delta) - log_tail(x);
      },
      seq);
}

LimitEstimate tail_ratio_limit(const LogTailFn& log_tail_f, const LogTailFn& log_tail_g,
                               double c, const GeometricSequence& seq) {
  if (!(c > 0.0)) throw domain_error("tail_ratio_limit: c must be > 0");
  return limit_from_log_sequence(
      [&](int j) {
        const double x = seq.at(j);
        return log_tail_f(x) - log_tail_g(c * x);
      },
      seq);
}

// ---------------------------------------------------------------------------
// Asymptotic line
// ---------------------------------------------------------------------------

LinearAsymptote asymptotic_line(const std::function<double(double)>& h,
                                const GeometricSequence& seq, double residual_tol) {
  LinearAsymptote out;
  std::vector<double> hv;    // h(x_j)
  std::vector<double> slopes;
  int settle = -1;
  for (int j = 0; j < seq.steps; ++j) {
    double v;
    try {
      v = h(seq.at(j));
    } catch (const error&) {
      break;
    }
    if (!std::isfinite(v)) break;
    hv.push_back(v);
    if (j >= 1) slopes.push_back((hv[j] - hv[j - 1]) / seq.at(j - 1));
    // Stop once the (accelerated) slope has settled; later probes only add
    // floating-point noise to the residual trace.
    const std::vector<double> acc = aitken_accelerate(slopes);
    const std::vector<double>& s = acc.size() >= 3 ? acc : slopes;
    if (s.size() >= 3 &&
        pairwise_close(s[s.size() - 3], s[s.size() - 2], s.back(), 1e-9)) {
      settle = j;
      break;
    }
  }
  out.probes = static_cast<int>(hv.size());
  if (slopes.empty()) return out;

  const std::vector<double> acc = aitken_accelerate(slopes);
  out.slope = acc.empty() ? slopes.back() : acc.back();

  std::vector<double> intercepts(hv.size());
  for (std::size_t j = 0; j < hv.size(); ++j)
    intercepts[j] = hv[j] - out.slope * seq.at(static_cast<int>(j));
  const std::vector<double> iacc = aitken_accelerate(intercepts);
  out.intercept = iacc.empty() ? intercepts.back() : iacc.back();

  for (std::size_t j = 0; j < hv.size(); ++j)
    out.residuals.push_back(
        std::fabs(hv[j] - (out.slope * seq.at(static_cast<int>(j)) + out.intercept)));

  if (settle < 0) return out;  // slope never stabilized: not convergent

  // Fresh residual probes past the settling point.
  std::vector<double> fresh;
  for (int k = 1; k <= 3 && settle + k < seq.steps; ++k) {
    double v;
    try {
      v = h(seq.at(settle + k));
    } catch (const error&) {
      break;
    }
    if (!std::isfinite(v)) break;
    fresh.push_back(std::fabs(v - (out.slope * seq.at(settle + k) + out.intercept)));
  }
  if (fresh.size() >= 3) {
    bool mono = fresh[0] >= fresh[1] && fresh[1] >= fresh[2];
    out.converged = mono && fresh[2] <= residual_tol && fresh[0] <= residual_tol;
    out.residuals.insert(out.residuals.end(), fresh.begin(), fresh.end());
  } else if (!fresh.empty()) {
    out.converged = fresh.back() <= residual_tol;
    out.residuals.insert(out.residuals.end(), fresh.begin(), fresh.end());
  }
  return out;
}

LineVerdict line_verdict(const LinearAsymptote& line, bool h_linear, double tol) {
  if (!line.converged) return LineVerdict::Inconclusive;
  if (h_linear) return LineVerdict::Inconclusive;
  if (line.intercept > tol) return LineVerdict::NotConvex;
  if (line.intercept < -tol) return LineVerdict::NotConcave;
  return LineVerdict::NeitherConvexNorConcave;
}

// ---------------------------------------------------------------------------
// Density sandwich
// ---------------------------------------------------------------------------

SandwichResult density_sandwich_check(const LogPdfFn& log_pdf_f, const LogPdfFn& log_pdf_g,
                                      double c, double eps, double A,
                                      std::span<const double> grid) {
  if (!(c > 0.0)) throw domain_error("density_sandwich_check: c must be > 0");
  if (!(eps > 0.0)) throw domain_error("density_sandwich_check: eps must be > 0");
  const double lc = std::log(c);
  for (double x : grid) {
    if (x < A) continue;
    const double fx = log_pdf_f(x);
    const double upper = lc + log_pdf_g(std::max(c * x - eps, 0.0));
    const double lower = lc + log_pdf_g(c * x + eps);
    if (!(lower <= fx && fx <= upper)) return {false, x};
  }
  return {true, quiet_nan};
}

// ---------------------------------------------------------------------------
// Variation classification
// ---------------------------------------------------------------------------

namespace {

constexpr double kSlowIndexCutoff = 0.02;
constexpr double kIndexAgreement = 0.2;

bool exponential_type(const Dist& d);

bool exponential_type_family(const DistFamily& f) {
  if (std::holds_alternative<Exponential>(f) || std::holds_alternative<Weibull>(f) ||
      std::holds_alternative<GammaInt>(f) || std::holds_alternative<GenExponential>(f))
    return true;
  if (const auto* p = std::get_if<PowerOf>(&f)) return exponential_type(*p->base);
  if (const auto* t = std::get_if<TailPowerOf>(&f)) return exponential_type(*t->base);
  return false;
}

bool exponential_type(const Dist& d) { return exponential_type_family(d.family()); }

bool bounded_support(const Dist& d) { return std::isfinite(d.support_right()); }

enum class LeafScan { AllExponentialType, SomeBounded, NeedsNumeric };

LeafScan scan_leaves(const System& s) {
  if (s.kind() == NodeKind::Component) {
    if (exponential_type(s.leaf())) return LeafScan::AllExponentialType;
    if (bounded_support(s.leaf())) return LeafScan::SomeBounded;
    return LeafScan::NeedsNumeric;
  }
  LeafScan out = LeafScan::AllExponentialType;
  for (const auto& c : s.children()) {
    const LeafScan cs = scan_leaves(c);
    if (cs == LeafScan::SomeBounded) return LeafScan::SomeBounded;
    if (cs == LeafScan::NeedsNumeric) out = LeafScan::NeedsNumeric;
  }
  return out;
}

}  // namespace

VariationClass classify_variation_numeric(const LogTailFn& log_tail,
                                          const GeometricSequence& seq) {
  VariationClass out;
  out.origin = VariationOrigin::NumericEstimate;
  const LimitEstimate r2 = variation_ratio_limit(log_tail, 2.0, seq);
  if (r2.status == LimitStatus::DivergedToZero) {
    out.label = VariationLabel::RapidlyVaryingMinusInf;
    const LimitEstimate probe = erpv_probe(log_tail, 1.0, seq);
    if (probe.converged() && std::fabs(probe.value - 1.0) <= 1e-3)
      out.erpv = false;  // constant shifts are invisible: definitively not ERPV
    return out;
  }
  if (r2.converged() && r2.value > 0.0) {
    const LimitEstimate rh = variation_ratio_limit(log_tail, 0.5, seq);
    if (!rh.converged() || !(rh.value > 0.0)) return out;  // Unknown
    const double rho2 = std::log(r2.value) / std::log(2.0);
    const double rhoh = std::log(rh.value) / std::log(0.5);
    if (std::fabs(rho2 - rhoh) > kIndexAgreement) return out;  // Unknown
    const double index = 0.5 * (rho2 + rhoh);
    out.index = index;
    out.index_uncertainty = std::fabs(rho2 - rhoh);
    out.erpv = false;  // power-law scaling rules the exponential class out
    out.label = std::fabs(index) <= kSlowIndexCutoff ? VariationLabel::SlowlyVarying
                                                     : VariationLabel::RegularlyVarying;
    return out;
  }
  return out;  // Unknown
}

VariationClass classify_variation(const System& s) {
  switch (scan_leaves(s)) {
    case LeafScan::AllExponentialType: {
      VariationClass out;
      out.label = VariationLabel::ERPVMinusInf;
      out.origin = VariationOrigin::AnalyticTag;
      out.erpv = true;
      return out;
    }
    case LeafScan::SomeBounded: {
      VariationClass out;
      out.label = VariationLabel::Unknown;
      out.origin = VariationOrigin::AnalyticTag;
      return out;
    }
    case LeafScan::NeedsNumeric:
      return classify_variation_numeric([&](double x) { return s.log_tail(x); });
  }
  return {};
}

// ---------------------------------------------------------------------------
// Decision pipeline
// ---------------------------------------------------------------------------

std::string variation_label_name(VariationLabel label) {
  switch (label) {
    case VariationLabel::SlowlyVarying: return "slowly_varying";
    case VariationLabel::RegularlyVarying: return "rv";
    case VariationLabel::RapidlyVaryingMinusInf: return "rpv_minus_inf";
    case VariationLabel::ERPVMinusInf: return "erpv_minus_inf";
    case VariationLabel::Unknown: return "unknown";
  }
  return "unknown";
}

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::ConvexLess: return "convex_less";
    case Relation::ConvexGreater: return "convex_greater";
    case Relation::StarLess: return "star_less";
    case Relation::StarGreater: return "star_greater";
    case Relation::ScaleEquivalent: return "scale_equivalent";
    case Relation::NonComparable: return "non_comparable";
    case Relation::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Numerical linearity backstop: h(x)/x constant across the law's bulk.
bool numerically_linear(const std::function<double(double)>& h, const System& X) {
  const double lo = X.quantile(0.05), hi = X.quantile(0.95);
  if (!(hi > lo) || !(lo > 0.0)) return false;
  const std::vector<double> xs = log_spaced(lo, hi, 17);
  double rmin = inf, rmax = -inf;
  for (double x : xs) {
    const double r = h(x) / x;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  return rmax - rmin <= 1e-9 * std::max(std::fabs(rmax), 1e-300);
}

Evidence make_evidence(std::string kind, std::string note,
                       std::map<std::string, double> values) {
  Evidence e;
  e.kind = std::move(kind);
  e.note = std::move(note);
  e.values = std::move(values);
  return e;
}

}  // namespace

ComparisonVerdict decide_comparability(const System& X, const System& Y,
                                       const DecisionConfig& cfg) {
  ComparisonVerdict v;

  // 1. Scale equivalence short-circuits everything.
  if (const auto k = scale_equivalent(X, Y)) {
    v.relation = Relation::ScaleEquivalent;
    v.scale_k = *k;
    v.evidence.push_back(make_evidence(
        "scale", "same family up to the scale factor k", {{"k", *k}}));
    return v;
  }

  // 2. Candidate c from the symbolic leading asymptotes.
  std::optional<TailLeadingTerm> lx, ly;
  try {
    lx = leading_asymptote(X);
    ly = leading_asymptote(Y);
  } catch (const domain_error&) {
    // no exponential asymptote: sweeps only
  }
  bool shortcut_possible = false;
  double candidate_c = 0.0;
  if (lx && ly) {
    const bool alpha_match =
        std::fabs(lx->alpha - ly->alpha) <=
        cfg.exponent_match_tol * std::max(lx->alpha, ly->alpha);
    const bool degree_match = std::fabs(lx->degree - ly->degree) <= 1e-9;
    if (alpha_match && degree_match) {
      candidate_c = lx->rate / ly->rate;
      const double coeff_ratio =
          lx->coefficient / (ly->coefficient * std::pow(candidate_c, ly->degree));
      if (std::fabs(coeff_ratio - 1.0) <= cfg.coeff_match_tol) {
        shortcut_possible = true;
        v.candidate_c = candidate_c;
        v.evidence.push_back(make_evidence(
            "leading_terms", "matched leading tail terms give the rescaling c",
            {{"c", candidate_c},
             {"N_lhs", lx->coefficient},
             {"N_rhs", ly->coefficient},
             {"alpha", lx->alpha},
             {"degree", lx->degree}}));
      }
    }
  }

  // 3. The tail-ratio route needs the exponentially-rapid analytic tags.
  if (shortcut_possible) {
    const VariationClass cx = classify_variation(X);
    const VariationClass cy = classify_variation(Y);
    shortcut_possible = cx.label == VariationLabel::ERPVMinusInf &&
                        cy.label == VariationLabel::ERPVMinusInf &&
                        cx.origin == VariationOrigin::AnalyticTag &&
                        cy.origin == VariationOrigin::AnalyticTag;
  }

  // 4. Tail ratio at the candidate c, corroborated by the asymptotic line.
  if (shortcut_possible) {
    const LimitEstimate ratio = tail_ratio_limit(
        [&](double x) { return X.log_tail(x); },
        [&](double x) { return Y.log_tail(x); }, candidate_c, cfg.seq);
    v.tail_ratio = ratio;
    if (ratio.converged() && std::fabs(ratio.value - 1.0) <= cfg.ratio_tol) {
      const auto h = [&](double x) { return quantile_compose(X, Y, x); };
      const LinearAsymptote line = asymptotic_line(h, cfg.seq, cfg.line_tol);
      v.line = line;
      const bool linear = numerically_linear(h, X);
      const bool corroborated =
          line.converged &&
          std::fabs(line.slope - candidate_c) <=
              cfg.line_tol * std::max(1.0, candidate_c) &&
          std::fabs(line.intercept) <= cfg.line_tol && !linear;
      v.evidence.push_back(make_evidence(
          "tail_ratio", "tail_F(x)/tail_G(cx) settles at 1",
          {{"c", candidate_c}, {"limit", ratio.value}}));
      if (corroborated) {
        v.evidence.push_back(make_evidence(
            "asymptotic_line",
            "quantile composition approaches the line c*x with zero intercept",
            {{"slope", line.slope}, {"intercept", line.intercept}}));
        v.relation = Relation::NonComparable;
        return v;
      }
      if (linear) {
        v.relation = Relation::Inconclusive;
        v.evidence.push_back(make_evidence(
            "asymptotic_line", "composition is numerically linear", {}));
        return v;
      }
      // fall through to sweeps when the corroboration fails
    }
  }

  // 5. Sweep fallback.
  const ConvexOrderResult sweeps = convex_order_test(X, Y, cfg.sweep, true);
  v.sweeps = sweeps;
  auto push_witnesses = [&v](const DirectionResult& d, const char* which) {
    std::size_t count = 0;
    for (const auto& w : d.witnesses) {
      if (count++ >= 4) break;
      Evidence e;
      e.kind = "pattern_witness";
      e.note = which;
      e.values = {{"a", w.a}, {"b", w.b}};
      e.witness = w;
      v.evidence.push_back(std::move(e));
    }
  };
  switch (sweeps.summary) {
    case PairOrdering::BothViolated:
      v.relation = Relation::NonComparable;
      push_witnesses(sweeps.forward, "violates lhs <=_c rhs");
      push_witnesses(sweeps.reverse, "violates rhs <=_c lhs");
      break;
    case PairOrdering::ForwardHolds:
      v.relation = Relation::ConvexLess;
      push_witnesses(sweeps.reverse, "violates rhs <=_c lhs");
      break;
    case PairOrdering::ReverseHolds:
      v.relation = Relation::ConvexGreater;
      push_witnesses(sweeps.forward, "violates lhs <=_c rhs");
      break;
    case PairOrdering::BothUnviolated: {
      if (sweeps.used_star_shortcut && sweeps.star_forward_holds &&
          !sweeps.star_reverse_holds)
        v.relation = Relation::StarLess;
      else if (sweeps.used_star_shortcut && sweeps.star_reverse_holds &&
               !sweeps.star_forward_holds)
        v.relation = Relation::StarGreater;
      else
        v.relation = Relation::Inconclusive;
      break;
    }
  }
  if (sweeps.used_star_shortcut) {
    if (sweeps.star_forward_holds && !sweeps.star_reverse_holds)
      v.star_relation = Relation::StarLess;
    else if (!sweeps.star_forward_holds && sweeps.star_reverse_holds)
      v.star_relation = Relation::StarGreater;
    else if (!sweeps.star_forward_holds && !sweeps.star_reverse_holds)
      v.star_relation = Relation::NonComparable;
    else
      v.star_relation = Relation::Inconclusive;
  }
  return v;
}

}  // namespace xorder
