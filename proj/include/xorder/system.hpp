#pragma once

#include <optional>
#include <vector>

#include "xorder/distribution.hpp"
#include "xorder/tail_algebra.hpp"

namespace xorder {

enum class NodeKind { Component, Max, Min };

/// Pairwise dependence coefficients of a Farlie-Gumbel-Morgenstern joint,
/// stored row-major over the upper triangle: c_12, c_13, ..., c_1k, c_23, ...
/// Validity requires sum |c_ij| <= 1.
struct Fgm {
  std::vector<double> coeffs;

  double at(std::size_t i, std::size_t j, std::size_t k) const;  // i < j < k
};

// ---------------------------------------------------------------------------
// System: composite lifetime law
//
// A composition tree of max/min nodes over component laws, depth at most 2
// beyond the leaves (enough for series-of-parallel layouts). F-G-M dependence
// is supported on max nodes whose children are exponential or Weibull
// component leaves. Evaluation routes through log space throughout; max-node
// tails use the signed inclusion-exclusion expansion so they stay accurate
// when every child tail underflows.
// ---------------------------------------------------------------------------

class System {
 public:
  System(Dist leaf);  // NOLINT: a bare law is a one-component system

  static System max_of(std::vector<System> children);
  static System max_of_fgm(std::vector<System> children, std::vector<double> fgm_coeffs);
  static System min_of(std::vector<System> children);

  NodeKind kind() const { return kind_; }
  const Dist& leaf() const;
  const std::vector<System>& children() const { return children_; }
  const std::optional<Fgm>& fgm() const { return fgm_; }
  int depth() const;

  double log_tail(double x) const;
  double tail(double x) const { return std::exp(log_tail(x)); }
  double cdf(double x) const { return -std::expm1(log_tail(x)); }
  double log_cdf(double x) const;
  double log_pdf(double x) const;
  double pdf(double x) const { return std::exp(log_pdf(x)); }
  double failure_rate(double x) const;
  double quantile(double p) const;
  double inverse_log_tail(double lt) const;
  double support_left() const;
  double support_right() const;

  System scaled(double k) const;
  bool operator==(const System& other) const;

  /// Signed exponential-polynomial expansion of the tail.
  TailExpansion tail_expansion() const;

 private:
  System() = default;
  NodeKind kind_ = NodeKind::Component;
  std::optional<Dist> leaf_;
  std::vector<System> children_;
  std::optional<Fgm> fgm_;
};

/// Leading tail asymptote  N * x^p * exp(-(rate*x)^alpha)  of the system.
TailLeadingTerm leading_asymptote(const System& s);

double evaluate_system(const System& s, double x, Functional f);

/// Analytic scale equivalence over system trees: identical topology and
/// dependence, children scale-equivalent with one common factor k.
std::optional<double> scale_equivalent(const System& a, const System& b);

}  // namespace xorder
