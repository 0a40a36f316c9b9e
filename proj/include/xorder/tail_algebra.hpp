#pragma once

#include <vector>

#include "xorder/common.hpp"

namespace xorder {

class Dist;

// ---------------------------------------------------------------------------
// Signed exponential-polynomial term algebra
//
// System tails expand into finite sums of terms
//
//     coeff * x^degree * exp(-sum_i s_i * x^alpha_i),
//
// closed under products and 1-(.). Dominance (slowest decay at +inf) orders
// an expansion so its first term is the leading asymptote.
// ---------------------------------------------------------------------------

struct ExpAtom {
  double alpha;  // exponent power
  double s;      // contributes s * x^alpha to the decay exponent
};

struct TailTerm {
  double coeff = 0.0;
  double degree = 0.0;
  std::vector<ExpAtom> expo;  // sorted by alpha ascending, alphas unique

  /// log |coeff * x^degree * exp(-sum s x^alpha)| at x > 0.
  double log_abs_at(double x) const;
};

/// true when a decays strictly slower than b (a dominates at +infinity):
/// compares decay exponents from the largest power down, then degrees.
bool decays_slower(const TailTerm& a, const TailTerm& b);

/// true when both terms have the same asymptotic shape (mergeable).
bool same_shape(const TailTerm& a, const TailTerm& b);

struct TailExpansion {
  std::vector<TailTerm> terms;  // normalized: dominance-sorted, shapes unique
  bool truncated = false;       // some lower-order terms were dropped

  static TailExpansion one();
  static TailExpansion of(TailTerm t);
};

TailExpansion add(const TailExpansion& a, const TailExpansion& b);
TailExpansion mul(const TailExpansion& a, const TailExpansion& b);
TailExpansion scale(const TailExpansion& a, double factor);
TailExpansion one_minus(const TailExpansion& a);

/// Merges equal shapes, drops vanished terms, sorts by dominance and caps the
/// term count (dropping only the fastest-decaying terms).
TailExpansion normalize(TailExpansion e);

/// Exact (or asymptotically exact, for non-integer shape powers) expansion of
/// a single law's tail. Bounded-support and builtin-tail laws have no
/// exponential expansion and throw domain_error.
TailExpansion tail_expansion(const Dist& d);

/// tail(x) ~ coefficient * x^degree * exp(-(rate*x)^alpha)
struct TailLeadingTerm {
  double coefficient;  // multiplicity-aggregated, > 0
  double rate;         // > 0
  double alpha;        // > 0
  double degree;       // >= 0
};

/// Dominant term of a normalized expansion. Throws domain_error when the
/// dominant exponent is not a single power of x or carries no decay at all.
TailLeadingTerm leading_term(const TailExpansion& e);

}  // namespace xorder
