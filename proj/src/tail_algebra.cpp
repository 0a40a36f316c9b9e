#include "xorder/tail_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "xorder/distribution.hpp"

namespace xorder {

namespace {

constexpr std::size_t kMaxTerms = 128;
constexpr int kSeriesCap = 8;  // truncation order for non-integer binomials

bool close(double a, double b, double tol = 1e-9) {
  return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b), 1e-30});
}

std::vector<ExpAtom> merge_atoms(const std::vector<ExpAtom>& a,
                                 const std::vector<ExpAtom>& b,
                                 double sign_b = 1.0) {
  std::vector<ExpAtom> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].alpha < b[j].alpha && !close(a[i].alpha, b[j].alpha))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || (b[j].alpha < a[i].alpha && !close(a[i].alpha, b[j].alpha))) {
      out.push_back({b[j].alpha, sign_b * b[j].s});
      ++j;
    } else {
      out.push_back({a[i].alpha, a[i].s + sign_b * b[j].s});
      ++i;
      ++j;
    }
  }
  std::erase_if(out, [](const ExpAtom& t) { return std::fabs(t.s) < 1e-300; });
  return out;
}

// Generalized binomial coefficient C(t, j).
double gen_binomial(double t, int j) {
  double c = 1.0;
  for (int i = 0; i < j; ++i) c *= (t - i) / (i + 1);
  return c;
}

bool is_small_integer(double t, int cap) {
  const double r = std::round(t);
  return std::fabs(t - r) < 1e-12 && r >= 1.0 && r <= cap;
}

}  // namespace

double TailTerm::log_abs_at(double x) const {
  double v = std::log(std::fabs(coeff)) + degree * std::log(x);
  for (const auto& a : expo) v -= a.s * std::pow(x, a.alpha);
  return v;
}

bool same_shape(const TailTerm& a, const TailTerm& b) {
  if (!close(a.degree, b.degree)) return false;
  if (a.expo.size() != b.expo.size()) return false;
  for (std::size_t i = 0; i < a.expo.size(); ++i)
    if (!close(a.expo[i].alpha, b.expo[i].alpha) || !close(a.expo[i].s, b.expo[i].s))
      return false;
  return true;
}

bool decays_slower(const TailTerm& a, const TailTerm& b) {
  // Walk the exponent powers from the largest alpha down; the first power
  // where the decay coefficients differ decides the comparison.
  std::size_t i = a.expo.size(), j = b.expo.size();
  while (i > 0 && j > 0) {
    const double aa = a.expo[i - 1].alpha, ba = b.expo[j - 1].alpha;
    if (close(aa, ba)) {
      const double sa = a.expo[i - 1].s, sb = b.expo[j - 1].s;
      if (!close(sa, sb)) return sa < sb;
      --i;
      --j;
    } else if (aa > ba) {
      return a.expo[i - 1].s < 0.0;  // extra decay at the top power: a faster
    } else {
      return b.expo[j - 1].s > 0.0;  // b carries extra decay: a slower
    }
  }
  if (i > 0) return a.expo[i - 1].s < 0.0;
  if (j > 0) return b.expo[j - 1].s > 0.0;
  if (!close(a.degree, b.degree)) return a.degree > b.degree;
  return false;
}

TailExpansion TailExpansion::one() { return of({1.0, 0.0, {}}); }

TailExpansion TailExpansion::of(TailTerm t) {
  TailExpansion e;
  e.terms.push_back(std::move(t));
  return e;
}

TailExpansion normalize(TailExpansion e) {
  std::vector<TailTerm> merged;
  for (auto& t : e.terms) {
    if (t.coeff == 0.0) continue;
    bool hit = false;
    for (auto& m : merged) {
      if (same_shape(m, t)) {
        m.coeff += t.coeff;
        hit = true;
        break;
      }
    }
    if (!hit) merged.push_back(std::move(t));
  }
  double cmax = 0.0;
  for (const auto& t : merged) cmax = std::max(cmax, std::fabs(t.coeff));
  std::erase_if(merged, [cmax](const TailTerm& t) {
    return std::fabs(t.coeff) <= 1e-13 * cmax;
  });
  std::stable_sort(merged.begin(), merged.end(),
                   [](const TailTerm& a, const TailTerm& b) { return decays_slower(a, b); });
  if (merged.size() > kMaxTerms) {
    merged.resize(kMaxTerms);
    e.truncated = true;
  }
  e.terms = std::move(merged);
  return e;
}

TailExpansion add(const TailExpansion& a, const TailExpansion& b) {
  TailExpansion out;
  out.truncated = a.truncated || b.truncated;
  out.terms = a.terms;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return normalize(std::move(out));
}

TailExpansion mul(const TailExpansion& a, const TailExpansion& b) {
  TailExpansion out;
  out.truncated = a.truncated || b.truncated;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms)
      out.terms.push_back(
          {ta.coeff * tb.coeff, ta.degree + tb.degree, merge_atoms(ta.expo, tb.expo)});
  return normalize(std::move(out));
}

TailExpansion scale(const TailExpansion& a, double factor) {
  TailExpansion out = a;
  for (auto& t : out.terms) t.coeff *= factor;
  return normalize(std::move(out));
}

TailExpansion one_minus(const TailExpansion& a) {
  TailExpansion out = scale(a, -1.0);
  out.terms.push_back({1.0, 0.0, {}});
  out.truncated = a.truncated;
  return normalize(std::move(out));
}

namespace {

// tail of (base cdf)^t given the base tail expansion: 1 - (1 - T)^t.
TailExpansion power_cdf_expansion(const TailExpansion& T, double t) {
  const bool exact = is_small_integer(t, kSeriesCap);
  const int J = exact ? static_cast<int>(std::round(t)) : kSeriesCap;
  TailExpansion out;
  out.truncated = T.truncated || !exact;
  TailExpansion Tj = T;  // T^j
  for (int j = 1; j <= J; ++j) {
    const double c = (j % 2 == 1 ? 1.0 : -1.0) * gen_binomial(t, j);
    out = add(out, scale(Tj, c));
    if (j < J) Tj = mul(Tj, T);
  }
  out.truncated = out.truncated || T.truncated || !exact;
  return normalize(std::move(out));
}

// T^t for a (possibly multi-term) tail expansion.
TailExpansion tail_power_expansion(const TailExpansion& T, double t) {
  if (T.terms.empty()) throw domain_error("tail_power: empty expansion");
  if (T.terms.size() == 1) {
    const TailTerm& d = T.terms[0];
    if (d.coeff <= 0.0) throw domain_error("tail_power: non-positive dominant term");
    TailTerm out{std::pow(d.coeff, t), d.degree * t, d.expo};
    for (auto& a : out.expo) a.s *= t;
    TailExpansion e = TailExpansion::of(out);
    e.truncated = T.truncated;
    return e;
  }
  if (is_small_integer(t, kSeriesCap)) {
    const int J = static_cast<int>(std::round(t));
    TailExpansion out = T;
    for (int j = 1; j < J; ++j) out = mul(out, T);
    return out;
  }
  // Factor out the dominant term D and expand (1 + R)^t to second order.
  const TailTerm& d = T.terms[0];
  if (d.coeff <= 0.0) throw domain_error("tail_power: non-positive dominant term");
  TailExpansion R;
  for (std::size_t i = 1; i < T.terms.size(); ++i) {
    const TailTerm& ti = T.terms[i];
    R.terms.push_back({ti.coeff / d.coeff, ti.degree - d.degree,
                       merge_atoms(ti.expo, d.expo, -1.0)});
  }
  R = normalize(std::move(R));
  TailExpansion corr = TailExpansion::one();
  corr = add(corr, scale(R, t));
  corr = add(corr, scale(mul(R, R), gen_binomial(t, 2)));
  TailExpansion Dt = tail_power_expansion(TailExpansion::of(d), t);
  TailExpansion out = mul(Dt, corr);
  out.truncated = true;
  return out;
}

}  // namespace

TailExpansion tail_expansion(const Dist& d) {
  struct V {
    const Dist* self;
    TailExpansion operator()(const Exponential& e) const {
      return TailExpansion::of({1.0, 0.0, {{1.0, e.rate}}});
    }
    TailExpansion operator()(const Weibull& w) const {
      return TailExpansion::of({1.0, 0.0, {{w.shape, std::pow(w.scale, w.shape)}}});
    }
    TailExpansion operator()(const GammaInt& g) const {
      TailExpansion out;
      double fact = 1.0;
      for (int l = 0; l < g.shape; ++l) {
        if (l > 0) fact *= l;
        out.terms.push_back(
            {std::pow(g.rate, l) / fact, static_cast<double>(l), {{1.0, g.rate}}});
      }
      return normalize(std::move(out));
    }
    TailExpansion operator()(const GenExponential& g) const {
      return power_cdf_expansion(
          TailExpansion::of({1.0, 0.0, {{1.0, g.rate}}}), g.shape);
    }
    TailExpansion operator()(const UQuadratic&) const {
      throw domain_error("tail_expansion: bounded support has no exponential asymptote");
    }
    TailExpansion operator()(const PowerOf& p) const {
      return power_cdf_expansion(tail_expansion(*p.base), p.exponent);
    }
    TailExpansion operator()(const TailPowerOf& t) const {
      return tail_power_expansion(tail_expansion(*t.base), t.exponent);
    }
    TailExpansion operator()(const BuiltinTail&) const {
      throw domain_error("tail_expansion: builtin tails have no exponential asymptote");
    }
  };
  return std::visit(V{&d}, d.family());
}

TailLeadingTerm leading_term(const TailExpansion& e) {
  if (e.terms.empty()) throw domain_error("leading_term: empty expansion");
  const TailTerm& t = e.terms.front();
  if (t.coeff <= 0.0)
    throw domain_error("leading_term: dominant coefficient is not positive");
  if (t.expo.empty())
    throw domain_error("leading_term: no exponential decay in the dominant term");
  if (t.expo.size() != 1)
    throw domain_error("leading_term: mixed exponent powers cannot be reduced to one rate");
  const ExpAtom& a = t.expo.front();
  if (a.s <= 0.0) throw domain_error("leading_term: dominant term does not decay");
  if (t.degree < -1e-12) throw domain_error("leading_term: negative polynomial degree");
  return {t.coeff, std::pow(a.s, 1.0 / a.alpha), a.alpha, std::max(t.degree, 0.0)};
}

}  // namespace xorder
