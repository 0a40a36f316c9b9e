#include "xorder/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "xorder/grid.hpp"

namespace xorder {

namespace {

constexpr double kQuantileBracketCap = 1e12;
constexpr int kBisectionMaxIters = 200;

void require(bool ok, const char* msg) {
  if (!ok) throw validation_error(msg);
}

// log tail of (base cdf)^t, given the base log tail. The branch keeps the
// value exact once 1 - u rounds to 1 in double precision.
double log_tail_of_power_cdf(double lt, double t) {
  if (lt == 0.0) return 0.0;
  if (lt < -34.0) return std::log(t) + lt;  // 1-(1-u)^t ~ t*u
  const double w = t * log1mexp(lt);        // log cdf^t
  return log1mexp(w);
}

// Inverse of the above: the base log tail that produces power-law log tail L.
double base_log_tail_for_power_cdf(double L, double t) {
  if (L == 0.0) return 0.0;
  if (L < -500.0) return L - std::log(t);
  const double w = log1mexp(L) / t;  // log of base cdf
  return log1mexp(w);
}

struct UQuadParams {
  double k, mid, half;  // density k*(x-mid)^2 on [mid-half, mid+half]
};

UQuadParams uq_params(const UQuadratic& u) {
  const double w = u.right - u.left;
  return {12.0 / (w * w * w), 0.5 * (u.left + u.right), 0.5 * w};
}

}  // namespace

double invert_monotone_log_tail(const std::function<double(double)>& lt, double target) {
  if (target == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (lt(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > kQuantileBracketCap)
      throw range_error("inverse_log_tail: bracket exceeded 1e12; tail level unreachable");
  }
  for (int i = 0; i < kBisectionMaxIters && (hi - lo) > 1e-13 * std::max(hi, 1.0); ++i) {
    const double mid = 0.5 * (lo + hi);
    (lt(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Dist::Dist(DistFamily f) : fam_(std::make_shared<const DistFamily>(std::move(f))) {}

Dist Dist::exponential(double rate) {
  require(rate > 0.0, "exponential: rate must be > 0");
  return Dist(Exponential{rate});
}

Dist Dist::weibull(double shape, double scale) {
  require(shape > 0.0, "weibull: shape must be > 0");
  require(scale > 0.0, "weibull: scale must be > 0");
  return Dist(Weibull{shape, scale});
}

Dist Dist::gamma_int(int shape, double rate) {
  require(shape >= 1, "gamma_int: shape must be an integer >= 1");
  require(rate > 0.0, "gamma_int: rate must be > 0");
  return Dist(GammaInt{shape, rate});
}

Dist Dist::gen_exponential(double shape, double rate) {
  require(shape > 0.0, "gen_exponential: shape must be > 0");
  require(rate > 0.0, "gen_exponential: rate must be > 0");
  return Dist(GenExponential{shape, rate});
}

Dist Dist::u_quadratic(double left, double right) {
  require(left >= 0.0, "u_quadratic: left must be >= 0");
  require(right > left, "u_quadratic: right must be > left");
  return Dist(UQuadratic{left, right});
}

Dist Dist::power_of(Dist base, double exponent) {
  require(exponent > 0.0, "power_of: exponent must be > 0");
  return Dist(PowerOf{std::make_shared<const Dist>(std::move(base)), exponent});
}

Dist Dist::tail_power_of(Dist base, double exponent) {
  require(exponent > 0.0, "tail_power_of: exponent must be > 0");
  return Dist(TailPowerOf{std::make_shared<const Dist>(std::move(base)), exponent});
}

Dist Dist::builtin_tail(BuiltinTailKind kind) { return Dist(BuiltinTail{kind}); }

Dist Dist::builtin_tail(const std::string& name) {
  if (name == "inv_quadratic") return builtin_tail(BuiltinTailKind::InvQuadratic);
  if (name == "inv_log") return builtin_tail(BuiltinTailKind::InvLog);
  if (name == "exp_log_squared") return builtin_tail(BuiltinTailKind::ExpLogSquared);
  throw validation_error("builtin_tail: unknown name '" + name + "'");
}

std::string Dist::family_name() const {
  struct V {
    std::string operator()(const Exponential&) const { return "exponential"; }
    std::string operator()(const Weibull&) const { return "weibull"; }
    std::string operator()(const GammaInt&) const { return "gamma_int"; }
    std::string operator()(const GenExponential&) const { return "gen_exponential"; }
    std::string operator()(const UQuadratic&) const { return "u_quadratic"; }
    std::string operator()(const PowerOf&) const { return "power_of"; }
    std::string operator()(const TailPowerOf&) const { return "tail_power_of"; }
    std::string operator()(const BuiltinTail&) const { return "builtin_tail"; }
  };
  return std::visit(V{}, *fam_);
}

// ---------------------------------------------------------------------------
// log tail
// ---------------------------------------------------------------------------

double Dist::log_tail(double x) const {
  if (!(x >= 0.0)) throw domain_error("log_tail: x must be >= 0");
  struct V {
    double x;
    double operator()(const Exponential& e) const { return -e.rate * x; }
    double operator()(const Weibull& w) const { return -std::pow(w.scale * x, w.shape); }
    double operator()(const GammaInt& g) const {
      const double lx = g.rate * x;
      if (lx == 0.0) return 0.0;
      const double llx = std::log(lx);
      std::vector<double> terms(static_cast<std::size_t>(g.shape));
      for (int l = 0; l < g.shape; ++l)
        terms[static_cast<std::size_t>(l)] =
            l == 0 ? 0.0 : l * llx - std::lgamma(l + 1.0);
      return -lx + log_sum_exp(terms);
    }
    double operator()(const GenExponential& g) const {
      return log_tail_of_power_cdf(-g.rate * x, g.shape);
    }
    double operator()(const UQuadratic& u) const {
      if (x <= u.left) return 0.0;
      if (x >= u.right) return -inf;
      const auto p = uq_params(u);
      const double y = x - p.mid;
      return std::log(p.k / 3.0) + std::log(u.right - x) +
             std::log(p.half * p.half + p.half * y + y * y);
    }
    double operator()(const PowerOf& pw) const {
      return log_tail_of_power_cdf(pw.base->log_tail(x), pw.exponent);
    }
    double operator()(const TailPowerOf& tp) const {
      return tp.exponent * tp.base->log_tail(x);
    }
    double operator()(const BuiltinTail& b) const {
      switch (b.kind) {
        case BuiltinTailKind::InvQuadratic:
          return x > 1e150 ? -2.0 * std::log(x) : -std::log1p(x * x);
        case BuiltinTailKind::InvLog:
          return -std::log1p(std::log1p(x));
        case BuiltinTailKind::ExpLogSquared: {
          const double u = std::log1p(x);
          return -u * u;
        }
      }
      return quiet_nan;
    }
  };
  return std::visit(V{x}, *fam_);
}

// ---------------------------------------------------------------------------
// log pdf
// ---------------------------------------------------------------------------

double Dist::log_pdf(double x) const {
  if (!(x >= 0.0)) throw domain_error("log_pdf: x must be >= 0");
  struct V {
    double x;
    double operator()(const Exponential& e) const { return std::log(e.rate) - e.rate * x; }
    double operator()(const Weibull& w) const {
      const double a = w.shape;
      const double xterm = a == 1.0 ? 0.0 : (a - 1.0) * std::log(x);
      return std::log(a) + a * std::log(w.scale) + xterm - std::pow(w.scale * x, a);
    }
    double operator()(const GammaInt& g) const {
      const double a = g.shape;
      const double xterm = g.shape == 1 ? 0.0 : (a - 1.0) * std::log(x);
      return a * std::log(g.rate) + xterm - g.rate * x - std::lgamma(a);
    }
    double operator()(const GenExponential& g) const {
      const double a = g.shape;
      const double log_cdf_base = log1mexp(-g.rate * x);
      const double cterm = a == 1.0 ? 0.0 : (a - 1.0) * log_cdf_base;
      return std::log(a) + std::log(g.rate) - g.rate * x + cterm;
    }
    double operator()(const UQuadratic& u) const {
      if (x < u.left || x > u.right) return -inf;
      const auto p = uq_params(u);
      return std::log(p.k) + 2.0 * std::log(std::fabs(x - p.mid));
    }
    double operator()(const PowerOf& pw) const {
      const double t = pw.exponent;
      const double log_cdf_base = log1mexp(pw.base->log_tail(x));
      const double cterm = t == 1.0 ? 0.0 : (t - 1.0) * log_cdf_base;
      return std::log(t) + cterm + pw.base->log_pdf(x);
    }
    double operator()(const TailPowerOf& tp) const {
      const double t = tp.exponent;
      const double tterm = t == 1.0 ? 0.0 : (t - 1.0) * tp.base->log_tail(x);
      return std::log(t) + tterm + tp.base->log_pdf(x);
    }
    double operator()(const BuiltinTail& b) const {
      switch (b.kind) {
        case BuiltinTailKind::InvQuadratic: {
          const double l1 = x > 1e150 ? 2.0 * std::log(x) : std::log1p(x * x);
          return std::log(2.0) + std::log(x) - 2.0 * l1;
        }
        case BuiltinTailKind::InvLog: {
          const double u = std::log1p(x);
          return -std::log1p(x) - 2.0 * std::log1p(u);
        }
        case BuiltinTailKind::ExpLogSquared: {
          const double u = std::log1p(x);
          return std::log(2.0) + std::log(u) - std::log1p(x) - u * u;
        }
      }
      return quiet_nan;
    }
  };
  return std::visit(V{x}, *fam_);
}

double Dist::failure_rate(double x) const {
  const double lt = log_tail(x);
  if (lt == -inf)
    throw domain_error("failure_rate: tail vanishes at or beyond the support endpoint");
  return std::exp(log_pdf(x) - lt);
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

double Dist::inverse_log_tail(double lt_target) const {
  if (!(lt_target <= 0.0)) throw domain_error("inverse_log_tail: target must be <= 0");
  if (lt_target == 0.0) return 0.0;
  if (lt_target == -inf) return support_right();
  struct V {
    double L;
    const Dist* self;
    double operator()(const Exponential& e) const { return -L / e.rate; }
    double operator()(const Weibull& w) const {
      return std::pow(-L, 1.0 / w.shape) / w.scale;
    }
    double operator()(const GammaInt&) const {
      return invert_monotone_log_tail([this](double x) { return self->log_tail(x); }, L);
    }
    double operator()(const GenExponential& g) const {
      return -base_log_tail_for_power_cdf(L, g.shape) / g.rate;
    }
    double operator()(const UQuadratic& u) const {
      const auto p = uq_params(u);
      const double y3 = p.half * p.half * p.half - 3.0 * std::exp(L) / p.k;
      return p.mid + std::cbrt(y3);
    }
    double operator()(const PowerOf& pw) const {
      return pw.base->inverse_log_tail(base_log_tail_for_power_cdf(L, pw.exponent));
    }
    double operator()(const TailPowerOf& tp) const {
      return tp.base->inverse_log_tail(L / tp.exponent);
    }
    double operator()(const BuiltinTail& b) const {
      switch (b.kind) {
        case BuiltinTailKind::InvQuadratic:
          return -L > 700.0 ? std::exp(-L / 2.0) : std::sqrt(std::expm1(-L));
        case BuiltinTailKind::InvLog: {
          const double u = std::expm1(-L);  // log1p(x)
          if (u > 700.0)
            throw range_error("inverse_log_tail: level unreachable for inv_log tail");
          return std::expm1(u);
        }
        case BuiltinTailKind::ExpLogSquared: {
          const double u = std::sqrt(-L);
          if (u > 700.0)
            throw range_error("inverse_log_tail: level unreachable for exp_log_squared tail");
          return std::expm1(u);
        }
      }
      return quiet_nan;
    }
  };
  return std::visit(V{lt_target, this}, *fam_);
}

double Dist::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile: p must lie in (0,1)");
  return inverse_log_tail(std::log1p(-p));
}

double Dist::support_right() const {
  if (const auto* u = std::get_if<UQuadratic>(fam_.get())) return u->right;
  if (const auto* p = std::get_if<PowerOf>(fam_.get())) return p->base->support_right();
  if (const auto* t = std::get_if<TailPowerOf>(fam_.get())) return t->base->support_right();
  return inf;
}

double Dist::support_left() const {
  if (const auto* u = std::get_if<UQuadratic>(fam_.get())) return u->left;
  if (const auto* p = std::get_if<PowerOf>(fam_.get())) return p->base->support_left();
  if (const auto* t = std::get_if<TailPowerOf>(fam_.get())) return t->base->support_left();
  return 0.0;
}

// ---------------------------------------------------------------------------
// Scaling and structural equality
// ---------------------------------------------------------------------------

Dist Dist::scaled(double k) const {
  require(k > 0.0, "scaled: factor must be > 0");
  struct V {
    double k;
    Dist operator()(const Exponential& e) const { return exponential(e.rate / k); }
    Dist operator()(const Weibull& w) const { return weibull(w.shape, w.scale / k); }
    Dist operator()(const GammaInt& g) const { return gamma_int(g.shape, g.rate / k); }
    Dist operator()(const GenExponential& g) const {
      return gen_exponential(g.shape, g.rate / k);
    }
    Dist operator()(const UQuadratic& u) const {
      return u_quadratic(k * u.left, k * u.right);
    }
    Dist operator()(const PowerOf& p) const {
      return power_of(p.base->scaled(k), p.exponent);
    }
    Dist operator()(const TailPowerOf& t) const {
      return tail_power_of(t.base->scaled(k), t.exponent);
    }
    Dist operator()(const BuiltinTail&) const {
      throw validation_error("scaled: builtin tails do not form a scale family");
    }
  };
  return std::visit(V{k}, *fam_);
}

bool Dist::operator==(const Dist& other) const {
  const DistFamily& a = *fam_;
  const DistFamily& b = *other.fam_;
  if (a.index() != b.index()) return false;
  struct V {
    const DistFamily& b;
    bool operator()(const Exponential& x) const {
      return x.rate == std::get<Exponential>(b).rate;
    }
    bool operator()(const Weibull& x) const {
      const auto& y = std::get<Weibull>(b);
      return x.shape == y.shape && x.scale == y.scale;
    }
    bool operator()(const GammaInt& x) const {
      const auto& y = std::get<GammaInt>(b);
      return x.shape == y.shape && x.rate == y.rate;
    }
    bool operator()(const GenExponential& x) const {
      const auto& y = std::get<GenExponential>(b);
      return x.shape == y.shape && x.rate == y.rate;
    }
    bool operator()(const UQuadratic& x) const {
      const auto& y = std::get<UQuadratic>(b);
      return x.left == y.left && x.right == y.right;
    }
    bool operator()(const PowerOf& x) const {
      const auto& y = std::get<PowerOf>(b);
      return x.exponent == y.exponent && *x.base == *y.base;
    }
    bool operator()(const TailPowerOf& x) const {
      const auto& y = std::get<TailPowerOf>(b);
      return x.exponent == y.exponent && *x.base == *y.base;
    }
    bool operator()(const BuiltinTail& x) const {
      return x.kind == std::get<BuiltinTail>(b).kind;
    }
  };
  return std::visit(V{b}, a);
}

// ---------------------------------------------------------------------------
// Functional dispatch
// ---------------------------------------------------------------------------

double evaluate(const Dist& d, double x, Functional f) {
  if (!(x >= 0.0)) throw domain_error("evaluate: x must be >= 0");
  switch (f) {
    case Functional::Cdf: return d.cdf(x);
    case Functional::Tail: return d.tail(x);
    case Functional::LogTail: return d.log_tail(x);
    case Functional::Pdf: return d.pdf(x);
    case Functional::FailureRate: return d.failure_rate(x);
  }
  throw config_error("evaluate: unknown functional");
}

// ---------------------------------------------------------------------------
// Failure-rate classification
// ---------------------------------------------------------------------------

namespace {

AgeingClass classify_on(const Dist& d, const std::vector<double>& grid, double rel_tol) {
  std::vector<double> rates(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rates[i] = d.failure_rate(grid[i]);
  AgeingClass out;
  out.tolerance = rel_tol;
  out.points = grid.size();
  out.lo = grid.front();
  out.hi = grid.back();
  switch (classify_monotonicity(rates, rel_tol)) {
    case Monotonicity::Increasing: out.label = AgeingLabel::IFR; break;
    case Monotonicity::Decreasing: out.label = AgeingLabel::DFR; break;
    case Monotonicity::Constant: out.label = AgeingLabel::ConstantFR; break;
    case Monotonicity::NonMonotone: out.label = AgeingLabel::NonMonotoneFR; break;
  }
  return out;
}

}  // namespace

AgeingClass classify_failure_rate(const Dist& d, const FailureRateProbe& probe) {
  if (probe.points < 2) throw config_error("classify_failure_rate: need >= 2 points");
  const double b = d.support_right();
  double lo, hi;
  if (std::isfinite(b)) {
    // Bounded support: exclude both endpoints by a margin of the range.
    const double a = d.support_left();
    lo = a + probe.endpoint_margin * (b - a);
    hi = b - probe.endpoint_margin * (b - a);
  } else {
    lo = d.quantile(probe.endpoint_margin);
    hi = d.quantile(1.0 - probe.endpoint_margin);
  }
  const auto grid = std::isfinite(b) ? linear_spaced(lo, hi, probe.points)
                                     : log_spaced(lo, hi, probe.points);
  return classify_on(d, grid, probe.rel_tol);
}

AgeingClass classify_failure_rate(const Dist& d, std::span<const double> grid,
                                  double rel_tol) {
  if (grid.size() < 2) throw config_error("classify_failure_rate: need >= 2 points");
  const double b = d.support_right();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || grid[i] >= b)
      throw domain_error("classify_failure_rate: grid point outside the support");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw domain_error("classify_failure_rate: grid must be strictly increasing");
  }
  return classify_on(d, std::vector<double>(grid.begin(), grid.end()), rel_tol);
}

// ---------------------------------------------------------------------------
// Scale equivalence
// ---------------------------------------------------------------------------

namespace {

bool close_rel(double a, double b, double tol = 1e-12) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

// Collapses PowerOf/TailPowerOf chains over exponential-type bases into their
// named families so equivalence is decided on canonical parameters.
Dist canonical(const Dist& d) {
  if (const auto* p = std::get_if<PowerOf>(&d.family())) {
    const Dist base = canonical(*p->base);
    if (const auto* e = std::get_if<Exponential>(&base.family()))
      return Dist::gen_exponential(p->exponent, e->rate);
    if (const auto* g = std::get_if<GenExponential>(&base.family()))
      return Dist::gen_exponential(p->exponent * g->shape, g->rate);
    if (const auto* q = std::get_if<PowerOf>(&base.family()))
      return Dist::power_of(*q->base, p->exponent * q->exponent);
    return Dist::power_of(base, p->exponent);
  }
  if (const auto* t = std::get_if<TailPowerOf>(&d.family())) {
    const Dist base = canonical(*t->base);
    if (const auto* e = std::get_if<Exponential>(&base.family()))
      return Dist::exponential(e->rate * t->exponent);
    if (const auto* w = std::get_if<Weibull>(&base.family()))
      return Dist::weibull(w->shape, w->scale * std::pow(t->exponent, 1.0 / w->shape));
    if (const auto* q = std::get_if<TailPowerOf>(&base.family()))
      return Dist::tail_power_of(*q->base, t->exponent * q->exponent);
    return Dist::tail_power_of(base, t->exponent);
  }
  return d;
}

}  // namespace

std::optional<double> scale_equivalent(const Dist& a_in, const Dist& b_in) {
  const Dist a = canonical(a_in);
  const Dist b = canonical(b_in);
  if (a.family().index() != b.family().index()) return std::nullopt;
  if (const auto* x = std::get_if<Exponential>(&a.family()))
    return x->rate / std::get<Exponential>(b.family()).rate;
  if (const auto* x = std::get_if<Weibull>(&a.family())) {
    const auto& y = std::get<Weibull>(b.family());
    if (!close_rel(x->shape, y.shape)) return std::nullopt;
    return x->scale / y.scale;
  }
  if (const auto* x = std::get_if<GammaInt>(&a.family())) {
    const auto& y = std::get<GammaInt>(b.family());
    if (x->shape != y.shape) return std::nullopt;
    return x->rate / y.rate;
  }
  if (const auto* x = std::get_if<GenExponential>(&a.family())) {
    const auto& y = std::get<GenExponential>(b.family());
    if (!close_rel(x->shape, y.shape)) return std::nullopt;
    return x->rate / y.rate;
  }
  if (const auto* x = std::get_if<UQuadratic>(&a.family())) {
    const auto& y = std::get<UQuadratic>(b.family());
    // [xl,xr] must equal [yl/k, yr/k].
    if (x->left == 0.0 && y.left == 0.0) return y.right / x->right;
    if (x->left > 0.0 && y.left > 0.0 && close_rel(y.left / x->left, y.right / x->right))
      return y.right / x->right;
    return std::nullopt;
  }
  if (const auto* x = std::get_if<PowerOf>(&a.family())) {
    const auto& y = std::get<PowerOf>(b.family());
    if (!close_rel(x->exponent, y.exponent)) return std::nullopt;
    return scale_equivalent(*x->base, *y.base);
  }
  if (const auto* x = std::get_if<TailPowerOf>(&a.family())) {
    const auto& y = std::get<TailPowerOf>(b.family());
    if (!close_rel(x->exponent, y.exponent)) return std::nullopt;
    return scale_equivalent(*x->base, *y.base);
  }
  if (const auto* x = std::get_if<BuiltinTail>(&a.family())) {
    if (x->kind == std::get<BuiltinTail>(b.family()).kind) return 1.0;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace xorder
