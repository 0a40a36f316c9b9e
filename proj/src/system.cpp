#include "xorder/system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace xorder {

namespace {

constexpr std::size_t kMaxFanout = 12;  // 2^k - 1 subset terms per evaluation

void require(bool ok, const std::string& msg) {
  if (!ok) throw validation_error(msg);
}

bool fgm_margin_ok(const System& child) {
  if (child.kind() != NodeKind::Component) return false;
  const auto& fam = child.leaf().family();
  return std::holds_alternative<Exponential>(fam) || std::holds_alternative<Weibull>(fam);
}

}  // namespace

double Fgm::at(std::size_t i, std::size_t j, std::size_t k) const {
  // row-major upper triangle: offset(i) = i*k - i*(i+1)/2
  const std::size_t off = i * k - i * (i + 1) / 2;
  return coeffs[off + (j - i - 1)];
}

System::System(Dist leaf) : kind_(NodeKind::Component), leaf_(std::move(leaf)) {}

const Dist& System::leaf() const {
  if (kind_ != NodeKind::Component) throw domain_error("leaf: not a component node");
  return *leaf_;
}

int System::depth() const {
  if (kind_ == NodeKind::Component) return 0;
  int d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth());
  return d + 1;
}

System System::max_of(std::vector<System> children) {
  require(!children.empty(), "max_of: at least one child required");
  require(children.size() <= kMaxFanout, "max_of: too many children");
  System s;
  s.kind_ = NodeKind::Max;
  s.children_ = std::move(children);
  require(s.depth() <= 2, "system tree depth exceeds 2 beyond the leaves");
  return s;
}

System System::min_of(std::vector<System> children) {
  require(!children.empty(), "min_of: at least one child required");
  require(children.size() <= kMaxFanout, "min_of: too many children");
  System s;
  s.kind_ = NodeKind::Min;
  s.children_ = std::move(children);
  require(s.depth() <= 2, "system tree depth exceeds 2 beyond the leaves");
  return s;
}

System System::max_of_fgm(std::vector<System> children, std::vector<double> fgm_coeffs) {
  const std::size_t k = children.size();
  require(k >= 2, "fgm: at least two margins required");
  require(k <= kMaxFanout, "fgm: too many margins");
  require(fgm_coeffs.size() == k * (k - 1) / 2,
          "fgm: expected k*(k-1)/2 upper-triangular coefficients");
  for (const auto& c : children)
    if (!fgm_margin_ok(c))
      throw validation_error(
          "fgm: dependence is supported only on max nodes over exponential or "
          "Weibull component margins");
  double sum = 0.0;
  for (double c : fgm_coeffs) sum += std::fabs(c);
  if (sum > 1.0 + 1e-12)
    throw validation_error("fgm: sum |c_ij| = " + std::to_string(sum) +
                           " violates the constraint sum |c_ij| <= 1");
  System s = max_of(std::move(children));
  s.fgm_ = Fgm{std::move(fgm_coeffs)};
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

// Tail of a max node by signed inclusion-exclusion over child log tails:
//   tail = sum_{T nonempty} (-1)^{|T|+1} prod_{i in T} u_i,  u_i = e^{lt_i}.
// Each subset term evaluates in log space; the union probability is at least
// max u_i, so the signed sum is stable.
void max_tail_terms(const std::vector<double>& lt, std::vector<SignedLog>& out) {
  const std::size_t k = lt.size();
  const std::size_t nmask = (std::size_t{1} << k) - 1;
  for (std::size_t mask = 1; mask <= nmask; ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s += lt[i];
    const int parity = std::popcount(mask) % 2;
    out.push_back({s, parity == 1 ? 1 : -1});
  }
}

}  // namespace

double System::log_tail(double x) const {
  switch (kind_) {
    case NodeKind::Component:
      return leaf_->log_tail(x);
    case NodeKind::Min: {
      double s = 0.0;
      for (const auto& c : children_) s += c.log_tail(x);
      return s;
    }
    case NodeKind::Max: {
      std::vector<double> lt(children_.size());
      for (std::size_t i = 0; i < children_.size(); ++i) lt[i] = children_[i].log_tail(x);
      std::vector<SignedLog> terms;
      terms.reserve((std::size_t{1} << lt.size()) + 16);
      max_tail_terms(lt, terms);
      if (fgm_) {
        const std::size_t k = lt.size();
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = i + 1; j < k; ++j) {
            const double c = fgm_->at(i, j, k);
            if (c == 0.0) continue;
            const double lc = std::log(std::fabs(c));
            const int cs = c > 0.0 ? 1 : -1;
            const std::size_t nmask = (std::size_t{1} << k) - 1;
            for (std::size_t mask = 0; mask <= nmask; ++mask) {
              double s = lt[i] + lt[j] + lc;
              for (std::size_t l = 0; l < k; ++l)
                if (mask & (std::size_t{1} << l)) s += lt[l];
              const int parity = std::popcount(mask) % 2;
              terms.push_back({s, (parity == 1 ? 1 : -1) * cs});
            }
          }
        }
      }
      const SignedLog r = signed_log_sum(terms);
      if (r.sign < 0) return -inf;  // cancellation dust below resolution
      return r.sign == 0 ? -inf : r.log_abs;
    }
  }
  return quiet_nan;
}

double System::log_cdf(double x) const {
  switch (kind_) {
    case NodeKind::Component:
      return log1mexp(leaf_->log_tail(x));
    case NodeKind::Min:
      return log1mexp(log_tail(x));
    case NodeKind::Max: {
      double s = 0.0;
      for (const auto& c : children_) s += c.log_cdf(x);
      if (fgm_) {
        const std::size_t k = children_.size();
        double corr = 0.0;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) {
            const double c = fgm_->at(i, j, k);
            if (c != 0.0)
              corr += c * std::exp(children_[i].log_tail(x) + children_[j].log_tail(x));
          }
        s += std::log1p(std::max(corr, -1.0));
      }
      return s;
    }
  }
  return quiet_nan;
}

double System::log_pdf(double x) const {
  switch (kind_) {
    case NodeKind::Component:
      return leaf_->log_pdf(x);
    case NodeKind::Min: {
      // pdf = sum_i pdf_i * prod_{j != i} tail_j
      std::vector<double> lt(children_.size()), terms(children_.size());
      double total = 0.0;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        lt[i] = children_[i].log_tail(x);
        total += lt[i];
      }
      for (std::size_t i = 0; i < children_.size(); ++i)
        terms[i] = children_[i].log_pdf(x) + total - lt[i];
      return log_sum_exp(terms);
    }
    case NodeKind::Max: {
      const std::size_t k = children_.size();
      std::vector<double> lt(k), lcdf(k), lpdf(k);
      double lcdf_all = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        lt[i] = children_[i].log_tail(x);
        lcdf[i] = children_[i].log_cdf(x);
        lpdf[i] = children_[i].log_pdf(x);
        lcdf_all += lcdf[i];
      }
      std::vector<SignedLog> terms;
      // d/dx prod cdf_i, distributed over the dependence factor when present
      for (std::size_t i = 0; i < k; ++i) {
        const double base = lpdf[i] + lcdf_all - lcdf[i];
        terms.push_back({base, 1});
        if (fgm_) {
          for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
              const double c = fgm_->at(a, b, k);
              if (c == 0.0) continue;
              terms.push_back({base + lt[a] + lt[b] + std::log(std::fabs(c)),
                               c > 0.0 ? 1 : -1});
            }
        }
      }
      if (fgm_) {
        // prod cdf_i * d/dx (1 + sum c_ab u_a u_b)
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = a + 1; b < k; ++b) {
            const double c = fgm_->at(a, b, k);
            if (c == 0.0) continue;
            const double lc = std::log(std::fabs(c));
            const int cs = c > 0.0 ? -1 : 1;  // derivative of u_a u_b is negative
            terms.push_back({lcdf_all + lt[a] + lt[b] + lc + lpdf[a] - lt[a], cs});
            terms.push_back({lcdf_all + lt[a] + lt[b] + lc + lpdf[b] - lt[b], cs});
          }
      }
      const SignedLog r = signed_log_sum(terms);
      return r.sign <= 0 ? -inf : r.log_abs;
    }
  }
  return quiet_nan;
}

double System::failure_rate(double x) const {
  const double lt = log_tail(x);
  if (lt == -inf)
    throw domain_error("failure_rate: tail vanishes at or beyond the support endpoint");
  return std::exp(log_pdf(x) - lt);
}

double System::inverse_log_tail(double lt) const {
  if (kind_ == NodeKind::Component) return leaf_->inverse_log_tail(lt);
  if (!(lt <= 0.0)) throw domain_error("inverse_log_tail: target must be <= 0");
  if (lt == 0.0) return 0.0;
  if (lt == -inf) return support_right();
  return invert_monotone_log_tail([this](double x) { return log_tail(x); }, lt);
}

double System::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile: p must lie in (0,1)");
  return inverse_log_tail(std::log1p(-p));
}

double System::support_left() const {
  if (kind_ == NodeKind::Component) return leaf_->support_left();
  double lo = kind_ == NodeKind::Max ? 0.0 : inf;
  for (const auto& c : children_)
    lo = kind_ == NodeKind::Max ? std::max(lo, c.support_left())
                                : std::min(lo, c.support_left());
  return lo;
}

double System::support_right() const {
  if (kind_ == NodeKind::Component) return leaf_->support_right();
  double hi = kind_ == NodeKind::Max ? 0.0 : inf;
  for (const auto& c : children_)
    hi = kind_ == NodeKind::Max ? std::max(hi, c.support_right())
                                : std::min(hi, c.support_right());
  return hi;
}

System System::scaled(double k) const {
  System s;
  s.kind_ = kind_;
  s.fgm_ = fgm_;
  if (kind_ == NodeKind::Component) {
    s.leaf_ = leaf_->scaled(k);
    return s;
  }
  s.children_.reserve(children_.size());
  for (const auto& c : children_) s.children_.push_back(c.scaled(k));
  return s;
}

bool System::operator==(const System& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == NodeKind::Component) return *leaf_ == *other.leaf_;
  if (children_.size() != other.children_.size()) return false;
  if (fgm_.has_value() != other.fgm_.has_value()) return false;
  if (fgm_ && fgm_->coeffs != other.fgm_->coeffs) return false;
  for (std::size_t i = 0; i < children_.size(); ++i)
    if (!(children_[i] == other.children_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Symbolic tail expansion
// ---------------------------------------------------------------------------

TailExpansion System::tail_expansion() const {
  switch (kind_) {
    case NodeKind::Component:
      return xorder::tail_expansion(*leaf_);
    case NodeKind::Min: {
      TailExpansion out = TailExpansion::one();
      for (const auto& c : children_) out = mul(out, c.tail_expansion());
      return out;
    }
    case NodeKind::Max: {
      std::vector<TailExpansion> child_tails;
      child_tails.reserve(children_.size());
      for (const auto& c : children_) child_tails.push_back(c.tail_expansion());
      TailExpansion prod = TailExpansion::one();
      for (const auto& t : child_tails) prod = mul(prod, one_minus(t));
      if (fgm_) {
        const std::size_t k = children_.size();
        TailExpansion dep = TailExpansion::one();
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) {
            const double c = fgm_->at(i, j, k);
            if (c != 0.0)
              dep = add(dep, scale(mul(child_tails[i], child_tails[j]), c));
          }
        prod = mul(prod, dep);
      }
      return one_minus(prod);
    }
  }
  throw domain_error("tail_expansion: unknown node kind");
}

TailLeadingTerm leading_asymptote(const System& s) { return leading_term(s.tail_expansion()); }

double evaluate_system(const System& s, double x, Functional f) {
  if (!(x >= 0.0)) throw domain_error("evaluate_system: x must be >= 0");
  switch (f) {
    case Functional::Cdf: return s.cdf(x);
    case Functional::Tail: return s.tail(x);
    case Functional::LogTail: return s.log_tail(x);
    case Functional::Pdf: return s.pdf(x);
    case Functional::FailureRate: return s.failure_rate(x);
  }
  throw config_error("evaluate_system: unknown functional");
}

std::optional<double> scale_equivalent(const System& a, const System& b) {
  if (a.kind() != b.kind()) return std::nullopt;
  if (a.kind() == NodeKind::Component) return scale_equivalent(a.leaf(), b.leaf());
  if (a.children().size() != b.children().size()) return std::nullopt;
  if (a.fgm().has_value() != b.fgm().has_value()) return std::nullopt;
  if (a.fgm() && a.fgm()->coeffs != b.fgm()->coeffs) return std::nullopt;
  std::optional<double> k;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    const auto ki = scale_equivalent(a.children()[i], b.children()[i]);
    if (!ki) return std::nullopt;
    if (!k) {
      k = ki;
    } else if (std::fabs(*ki - *k) > 1e-12 * std::max(std::fabs(*ki), std::fabs(*k))) {
      return std::nullopt;
    }
  }
  return k;
}

}  // namespace xorder
