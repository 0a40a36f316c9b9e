#include "xorder/orders.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "xorder/grid.hpp"

namespace xorder {

// ---------------------------------------------------------------------------
// Sign patterns
// ---------------------------------------------------------------------------

SignPattern sign_pattern(std::span<const double> values, double eps_rel) {
  if (!(eps_rel > 0.0)) throw config_error("sign_pattern: tolerance must be > 0");
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::fabs(v));
  const double thr = eps_rel * scale;

  SignPattern out;
  out.epsilon = eps_rel;
  int last = 0;
  for (double v : values) {
    int s = 0;
    if (v > thr) s = 1;
    else if (v < -thr) s = -1;
    if (s == 0) {
      ++out.suppressed;
      continue;
    }
    if (s != last) {
      if (!out.pattern.empty()) out.pattern += ',';
      out.pattern += (s > 0 ? '+' : '-');
      last = s;
    }
  }
  return out;
}

bool star_pattern_admissible(const std::string& p) {
  return p.empty() || p == "-" || p == "+" || p == "-,+";
}

bool convex_pattern_admissible(const std::string& p) {
  return p.empty() || p == "+" || p == "-" || p == "+,-" || p == "-,+" || p == "+,-,+";
}

// ---------------------------------------------------------------------------
// Quantile composition and shape probes
// ---------------------------------------------------------------------------

double quantile_compose(const System& X, const System& Y, double x) {
  if (!(x >= 0.0)) throw domain_error("quantile_compose: x must be >= 0");
  if (x == 0.0) return 0.0;
  return Y.inverse_log_tail(X.log_tail(x));
}

ShapeResult shape_probe(std::span<const double> xs, std::span<const double> hs,
                        ShapeMode mode, double rel_tol) {
  if (xs.size() != hs.size()) throw config_error("shape_probe: size mismatch");
  if (xs.size() < 64) throw config_error("shape_probe: need at least 64 grid points");

  std::vector<double> probe;
  if (mode == ShapeMode::Star) {
    probe.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(xs[i] > 0.0)) throw domain_error("shape_probe: star mode needs x > 0");
      probe[i] = hs[i] / xs[i];
    }
  } else {
    // Divided second differences on the (possibly non-uniform) grid.
    probe.resize(xs.size() - 2);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      const double dl = (hs[i] - hs[i - 1]) / (xs[i] - xs[i - 1]);
      const double dr = (hs[i + 1] - hs[i]) / (xs[i + 1] - xs[i]);
      probe[i - 1] = 2.0 * (dr - dl) / (xs[i + 1] - xs[i - 1]);
    }
  }

  if (mode == ShapeMode::Star) {
    switch (classify_monotonicity(probe, rel_tol)) {
      case Monotonicity::Increasing: return ShapeResult::Holds;
      case Monotonicity::Decreasing: return ShapeResult::HoldsReversed;
      case Monotonicity::Constant: return ShapeResult::Inconclusive;
      case Monotonicity::NonMonotone: return ShapeResult::Neither;
    }
  }
  double scale = 0.0;
  for (double v : probe) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return ShapeResult::Inconclusive;
  const double thr = rel_tol * scale;
  bool pos = false, neg = false;
  for (double v : probe) {
    if (v > thr) pos = true;
    else if (v < -thr) neg = true;
  }
  if (pos && neg) return ShapeResult::Neither;
  if (pos) return ShapeResult::Holds;
  if (neg) return ShapeResult::HoldsReversed;
  return ShapeResult::Inconclusive;
}

// ---------------------------------------------------------------------------
// Sweep machinery
// ---------------------------------------------------------------------------

namespace {

double extended_log_tail(const System& s, double u) {
  return u <= 0.0 ? 0.0 : s.log_tail(u);
}

// V(x) = tail_Y(x) - tail_X(a x + b), in log space via exp_diff.
std::vector<double> sample_v(const System& X, const System& Y, double a, double b,
                             std::span<const double> xs) {
  std::vector<double> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    v[i] = exp_diff(Y.log_tail(xs[i]), extended_log_tail(X, a * xs[i] + b));
  return v;
}

// Upper grid point: where the law's tail reaches tail_hi, capped.
double tail_reach(const System& s, double tail_hi, double cap) {
  try {
    return std::min(s.inverse_log_tail(std::log(tail_hi)), cap);
  } catch (const range_error&) {
    return cap;
  }
}

// Inserts refine_factor-1 extra points into every interval that sits within
// two samples of a sign transition, then returns the merged grid.
std::vector<double> refine_around_changes(std::span<const double> xs,
                                          std::span<const double> v, double thr,
                                          std::size_t factor) {
  std::vector<int> sign(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    sign[i] = v[i] > thr ? 1 : (v[i] < -thr ? -1 : 0);

  std::vector<bool> hot(xs.size(), false);
  int last = 0;
  std::size_t last_idx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (sign[i] == 0) continue;
    if (last != 0 && sign[i] != last) {
      const std::size_t lo = last_idx >= 2 ? last_idx - 2 : 0;
      const std::size_t hi = std::min(i + 2, xs.size() - 1);
      for (std::size_t j = lo; j <= hi; ++j) hot[j] = true;
    }
    last = sign[i];
    last_idx = i;
  }

  std::vector<double> out;
  out.reserve(xs.size() * 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back(xs[i]);
    if (i + 1 < xs.size() && hot[i] && hot[i + 1]) {
      const double l0 = std::log(xs[i]), l1 = std::log(xs[i + 1]);
      for (std::size_t k = 1; k < factor; ++k)
        out.push_back(std::exp(l0 + (l1 - l0) * static_cast<double>(k) /
                                        static_cast<double>(factor)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

using PatternCheck = bool (*)(const std::string&);

// One sweep cell: pattern on the base grid; an inadmissible pattern must
// survive a locally refined grid before it becomes a witness.
std::optional<PatternWitness> run_cell(const System& X, const System& Y, double a,
                                       double b, std::span<const double> xs,
                                       const SweepConfig& cfg, PatternCheck admissible) {
  const std::vector<double> v = sample_v(X, Y, a, b, xs);
  SignPattern p = sign_pattern(v, cfg.sign_eps);
  if (admissible(p.pattern)) return std::nullopt;

  double scale = 0.0;
  for (double w : v) scale = std::max(scale, std::fabs(w));
  const std::vector<double> fine =
      refine_around_changes(xs, v, cfg.sign_eps * scale, cfg.refine_factor);
  const std::vector<double> v2 = sample_v(X, Y, a, b, fine);
  SignPattern p2 = sign_pattern(v2, cfg.sign_eps);
  if (admissible(p2.pattern)) return std::nullopt;

  PatternWitness w;
  w.a = a;
  w.b = b;
  w.pattern = std::move(p2);
  w.x_lo = fine.front();
  w.x_hi = fine.back();
  w.points = fine.size();
  return w;
}

std::vector<double> a_sweep_values(const SweepConfig& cfg) {
  if (cfg.a_points == 1) return {1.0};
  return log_spaced(cfg.a_min, cfg.a_max, cfg.a_points);
}

DirectionResult run_star_direction(const System& X, const System& Y,
                                   std::span<const double> xs, const SweepConfig& cfg) {
  const std::vector<double> as = a_sweep_values(cfg);
  const auto cells = indexed_map<std::optional<PatternWitness>>(
      as.size(),
      [&](std::size_t i) {
        return run_cell(X, Y, as[i], 0.0, xs, cfg, &star_pattern_admissible);
      },
      cfg.execution);
  DirectionResult out;
  out.cells = cells.size();
  for (const auto& c : cells)
    if (c) out.witnesses.push_back(*c);
  out.violated = !out.witnesses.empty();
  return out;
}

DirectionResult run_convex_direction(const System& X, const System& Y,
                                     std::span<const double> xs, const SweepConfig& cfg,
                                     bool nonnegative_b_only) {
  const std::vector<double> as = a_sweep_values(cfg);
  const double median_y = Y.quantile(0.5);
  std::vector<double> bs;
  if (cfg.b_points == 1) {
    bs.push_back(0.0);
  } else {
    const double B = cfg.b_span_medians * median_y;
    bs = linear_spaced(-B, B, cfg.b_points);
  }
  if (nonnegative_b_only)
    std::erase_if(bs, [](double b) { return b < 0.0; });

  struct Cell {
    double a, b;
  };
  std::vector<Cell> plan;
  plan.reserve(as.size() * bs.size());
  for (double a : as)
    for (double b : bs) plan.push_back({a, b});

  const auto cells = indexed_map<std::optional<PatternWitness>>(
      plan.size(),
      [&](std::size_t i) {
        return run_cell(X, Y, plan[i].a, plan[i].b, xs, cfg,
                        &convex_pattern_admissible);
      },
      cfg.execution);
  DirectionResult out;
  out.cells = cells.size();
  for (const auto& c : cells)
    if (c) out.witnesses.push_back(*c);
  out.violated = !out.witnesses.empty();
  return out;
}

}  // namespace

std::vector<double> comparison_grid(const System& X, const System& Y,
                                    const SweepConfig& cfg) {
  if (cfg.grid_size < 64) throw config_error("comparison_grid: need >= 64 points");
  const double lo = std::min(X.quantile(cfg.p_lo), Y.quantile(cfg.p_lo));
  double hi = std::max(tail_reach(X, cfg.tail_hi, cfg.x_cap),
                       tail_reach(Y, cfg.tail_hi, cfg.x_cap));
  if (!(hi > lo)) hi = lo * 2.0 + 1.0;
  return log_spaced(lo, hi, cfg.grid_size);
}

StarOrderResult star_order_test(const System& X, const System& Y,
                                const SweepConfig& cfg) {
  const std::vector<double> xs = comparison_grid(X, Y, cfg);
  StarOrderResult out;
  out.detail = run_star_direction(X, Y, xs, cfg);
  out.holds = !out.detail.violated;
  return out;
}

ConvexOrderResult convex_order_test(const System& X, const System& Y,
                                    const SweepConfig& cfg, bool use_star_shortcut) {
  const std::vector<double> xs = comparison_grid(X, Y, cfg);
  ConvexOrderResult out;
  out.used_star_shortcut = use_star_shortcut;
  bool forward_b_nonneg = false, reverse_b_nonneg = false;
  if (use_star_shortcut) {
    out.star_forward_holds = !run_star_direction(X, Y, xs, cfg).violated;
    out.star_reverse_holds = !run_star_direction(Y, X, xs, cfg).violated;
    forward_b_nonneg = out.star_forward_holds;
    reverse_b_nonneg = out.star_reverse_holds;
  }
  out.forward = run_convex_direction(X, Y, xs, cfg, forward_b_nonneg);
  out.reverse = run_convex_direction(Y, X, xs, cfg, reverse_b_nonneg);
  if (out.forward.violated && out.reverse.violated)
    out.summary = PairOrdering::BothViolated;
  else if (!out.forward.violated && out.reverse.violated)
    out.summary = PairOrdering::ForwardHolds;
  else if (out.forward.violated && !out.reverse.violated)
    out.summary = PairOrdering::ReverseHolds;
  else
    out.summary = PairOrdering::BothUnviolated;
  return out;
}

// ---------------------------------------------------------------------------
// Saunders-Moran criterion
// ---------------------------------------------------------------------------

ParametricFamily::ParametricFamily(Kind k, std::function<Dist(double)> make)
    : kind_(k), make_(std::move(make)) {}

ParametricFamily ParametricFamily::power_exponent(Dist base) {
  ParametricFamily f(Kind::PowerExponent,
                     [base](double a) { return Dist::power_of(base, a); });
  f.base_ = std::move(base);
  return f;
}

ParametricFamily ParametricFamily::scale(Dist unit) {
  ParametricFamily f(Kind::Scale,
                     [unit](double l) { return unit.scaled(1.0 / l); });
  f.base_ = std::move(unit);
  return f;
}

ParametricFamily ParametricFamily::generic(std::function<Dist(double)> make) {
  return ParametricFamily(Kind::Generic, std::move(make));
}

Dist ParametricFamily::member(double alpha) const { return make_(alpha); }

const Dist& ParametricFamily::base() const {
  if (!base_) throw domain_error("ParametricFamily: no base law for a generic family");
  return *base_;
}

double saunders_moran_D(const ParametricFamily& family, double alpha, double x) {
  if (!(x > 0.0)) throw domain_error("saunders_moran_D: x must be in the support interior");
  switch (family.kind()) {
    case ParametricFamily::Kind::Scale:
      return 1.0 / alpha;
    case ParametricFamily::Kind::PowerExponent: {
      // F_a = F^a:  D = F log F / (a x f), with F, f of the base law.
      const double F = family.base().cdf(x);
      const double f = family.base().pdf(x);
      if (f == 0.0)
        throw domain_error("saunders_moran_D: density vanishes (singular point)");
      if (F == 0.0) return -inf;  // F log F -> 0 but the quotient diverges below
      return F * std::log(F) / (alpha * x * f);
    }
    case ParametricFamily::Kind::Generic: {
      const double delta = 1e-6 * std::max(1.0, std::fabs(alpha));
      const double Fp = family.member(alpha + delta).cdf(x);
      const double Fm = family.member(alpha - delta).cdf(x);
      const double f = family.member(alpha).pdf(x);
      if (f == 0.0)
        throw domain_error("saunders_moran_D: density vanishes (singular point)");
      return (Fp - Fm) / (2.0 * delta) / (x * f);
    }
  }
  throw config_error("saunders_moran_D: unknown family kind");
}

std::vector<double> sm_default_grid(const ParametricFamily& family, double alpha,
                                    std::size_t points) {
  const Dist member = family.member(alpha);
  const double margin = 1e-6;
  const double b = member.support_right();
  if (std::isfinite(b)) {
    const double a = member.support_left();
    return linear_spaced(a + margin * (b - a), b - margin * (b - a), points);
  }
  return log_spaced(member.quantile(margin), member.quantile(1.0 - margin), points);
}

StarFamilyOrdering sm_order_test(const ParametricFamily& family, double alpha1,
                                 double alpha2, std::span<const double> grid,
                                 double rel_tol) {
  if (alpha1 == alpha2) throw config_error("sm_order_test: parameters must differ");
  auto classify = [&](double alpha) {
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      d[i] = saunders_moran_D(family, alpha, grid[i]);
    return classify_monotonicity(d, rel_tol);
  };
  const Monotonicity m1 = classify(alpha1);
  const Monotonicity m2 = classify(alpha2);
  if (m1 != m2) return StarFamilyOrdering::NonComparableInStar;
  switch (m1) {
    case Monotonicity::Increasing: return StarFamilyOrdering::DecreasingInStar;
    case Monotonicity::Decreasing: return StarFamilyOrdering::IncreasingInStar;
    case Monotonicity::Constant: return StarFamilyOrdering::EquivalentInStar;
    case Monotonicity::NonMonotone: return StarFamilyOrdering::NonComparableInStar;
  }
  return StarFamilyOrdering::NonComparableInStar;
}

}  // namespace xorder
