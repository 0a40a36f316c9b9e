#include <cmath>
#include <random>

#include "doctest.h"
#include "xorder/grid.hpp"
#include "xorder/orders.hpp"

using namespace xorder;

namespace {

// Reduced sweep for unit-test speed; acceptance runs the full defaults.
SweepConfig quick_sweep() {
  SweepConfig cfg;
  cfg.grid_size = 1024;
  cfg.a_points = 32;
  cfg.b_points = 17;
  return cfg;
}

System weibull_max(double shape, int k) {
  return System(Dist::power_of(Dist::weibull(shape, 1.0), k));
}

}  // namespace

TEST_CASE("sign pattern collapse") {
  // samples of (x-1)(x-2)(x-3) between 0 and 4
  std::vector<double> v;
  for (double x : linear_spaced(0.0, 4.0, 81))
    v.push_back((x - 1.0) * (x - 2.0) * (x - 3.0));
  CHECK(sign_pattern(v, 1e-9).pattern == "-,+,-,+");

  CHECK(sign_pattern(std::vector<double>{0.5, 1.0, 2.0}, 1e-9).pattern == "+");

  const auto near_zero = sign_pattern(std::vector<double>{0.0, 1e-15, 1.0}, 1e-9);
  CHECK(near_zero.pattern == "+");
  CHECK(near_zero.suppressed == 2);

  const auto empty = sign_pattern(std::vector<double>{0.0, 0.0}, 1e-9);
  CHECK(empty.empty());
  CHECK(empty.suppressed == 2);

  CHECK_THROWS_AS(sign_pattern(v, 0.0), config_error);
}

TEST_CASE("sign pattern flips with the data") {
  std::mt19937_64 rng(7u);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> v(64), neg(64);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = std::sin(0.3 * static_cast<double>(i) + static_cast<double>(rng() % 7));
      neg[i] = -v[i];
    }
    std::string flipped;
    for (char c : sign_pattern(v, 1e-9).pattern)
      flipped += c == '+' ? '-' : (c == '-' ? '+' : c);
    CHECK(sign_pattern(neg, 1e-9).pattern == flipped);
  }
}

TEST_CASE("admissible pattern sets") {
  for (const char* p : {"", "-", "+", "-,+"}) CHECK(star_pattern_admissible(p));
  for (const char* p : {"+,-", "-,+,-", "+,-,+"}) CHECK_FALSE(star_pattern_admissible(p));
  for (const char* p : {"", "+", "-", "+,-", "-,+", "+,-,+"})
    CHECK(convex_pattern_admissible(p));
  for (const char* p : {"-,+,-", "+,-,+,-", "-,+,-,+"})
    CHECK_FALSE(convex_pattern_admissible(p));
}

TEST_CASE("quantile composition") {
  const System x(Dist::gamma_int(2, 1.5));
  for (double t : log_spaced(1e-3, 30.0, 65))
    CHECK(std::fabs(quantile_compose(x, x, t) - t) <= 1e-9 * std::max(1.0, t));

  // exponential pair: h(x) = (rate_x / rate_y) x
  const System e2(Dist::exponential(2.0)), e1(Dist::exponential(1.0));
  for (double t : {0.1, 1.0, 7.0})
    CHECK(quantile_compose(e2, e1, t) == doctest::Approx(2.0 * t).epsilon(1e-12));

  CHECK(quantile_compose(e2, e1, 0.0) == 0.0);

  // two-vs-one homogeneous weibull parallel, shape 2, against the closed form
  const System xk = weibull_max(2.0, 2), ym = weibull_max(2.0, 1);
  const double got = quantile_compose(xk, ym, 1.0);
  const double inner = 1.0 - std::exp(-1.0);
  const double closed = std::sqrt(-std::log(1.0 - inner * inner));
  CHECK(got == doctest::Approx(closed).epsilon(1e-12));
  CHECK(got == doctest::Approx(0.714227).epsilon(2e-6));

  // composition stays monotone on a probe grid
  double prev = 0.0;
  for (double t : log_spaced(1e-4, 50.0, 257)) {
    const double h = quantile_compose(xk, ym, t);
    CHECK(h >= prev - 1e-12);
    prev = h;
  }
}

TEST_CASE("shape probe") {
  const auto xs = log_spaced(0.01, 10.0, 257);
  std::vector<double> sq(xs.size()), rt(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sq[i] = xs[i] * xs[i];
    rt[i] = std::sqrt(xs[i]);
  }
  CHECK(shape_probe(xs, sq, ShapeMode::Convex) == ShapeResult::Holds);
  CHECK(shape_probe(xs, rt, ShapeMode::Convex) == ShapeResult::HoldsReversed);
  CHECK(shape_probe(xs, sq, ShapeMode::Star) == ShapeResult::Holds);
  CHECK(shape_probe(xs, rt, ShapeMode::Star) == ShapeResult::HoldsReversed);

  // the two-vs-one weibull composition is neither convex nor concave
  const System xk = weibull_max(2.0, 2), ym = weibull_max(2.0, 1);
  std::vector<double> h(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) h[i] = quantile_compose(xk, ym, xs[i]);
  CHECK(shape_probe(xs, h, ShapeMode::Convex) == ShapeResult::Neither);

  const auto tiny = log_spaced(0.1, 1.0, 8);
  CHECK_THROWS_AS(shape_probe(tiny, std::vector<double>(8, 1.0), ShapeMode::Convex),
                  config_error);
}

TEST_CASE("star order holds for homogeneous weibull maxima") {
  const auto cfg = quick_sweep();
  CHECK(star_order_test(weibull_max(2.0, 2), weibull_max(2.0, 1), cfg).holds);
  CHECK(star_order_test(weibull_max(0.5, 3), weibull_max(0.5, 2), cfg).holds);
  // identical laws: holds with empty patterns
  const System e(Dist::exponential(1.0));
  const auto same = star_order_test(e, e, cfg);
  CHECK(same.holds);
}

TEST_CASE("star order fails both ways for bounded u-quadratic maxima") {
  const System x2(Dist::power_of(Dist::u_quadratic(0.0, 4.0), 2.0));
  const System x1(Dist::u_quadratic(0.0, 4.0));
  const auto cfg = quick_sweep();
  const auto fwd = star_order_test(x2, x1, cfg);
  const auto rev = star_order_test(x1, x2, cfg);
  CHECK_FALSE(fwd.holds);
  CHECK_FALSE(rev.holds);
  REQUIRE_FALSE(fwd.detail.witnesses.empty());
  CHECK(fwd.detail.witnesses.front().a > 0.0);
}

TEST_CASE("convex order: supported direction and violations") {
  const auto cfg = quick_sweep();
  // two-component homogeneous exponential parallel ages faster than one
  const System x22(Dist::power_of(Dist::exponential(1.0), 2.0));
  const System x11(Dist::exponential(1.0));
  const auto r = convex_order_test(x22, x11, cfg, false);
  CHECK(r.summary == PairOrdering::ForwardHolds);
  CHECK_FALSE(r.forward.violated);
  CHECK(r.reverse.violated);

  // identical laws: both directions unviolated
  const auto same = convex_order_test(x11, x11, cfg, false);
  CHECK(same.summary == PairOrdering::BothUnviolated);

  // the star shortcut restricts b >= 0 without changing the verdict
  const auto rs = convex_order_test(x22, x11, cfg, true);
  CHECK(rs.summary == PairOrdering::ForwardHolds);
  CHECK(rs.used_star_shortcut);
  CHECK(rs.star_forward_holds);
}

TEST_CASE("convex order: weibull maxima are non-comparable") {
  auto cfg = quick_sweep();
  const auto r = convex_order_test(weibull_max(2.0, 2), weibull_max(2.0, 1), cfg, false);
  CHECK(r.summary == PairOrdering::BothViolated);
  // consistency: a confirmed convex violation always persists after refinement
  for (const auto& w : r.forward.witnesses) {
    CHECK_FALSE(convex_pattern_admissible(w.pattern.pattern));
    CHECK(w.a > 0.0);
  }
}

TEST_CASE("verdict labels are scale invariant") {
  const auto cfg = quick_sweep();
  const System x22(Dist::power_of(Dist::exponential(1.0), 2.0));
  const System x11(Dist::exponential(1.0));
  for (double k : {0.5, 2.0, 10.0}) {
    const auto r = convex_order_test(x22.scaled(k), x11, cfg, false);
    CHECK(r.summary == PairOrdering::ForwardHolds);
  }
}

TEST_CASE("convex support implies star support") {
  const auto cfg = quick_sweep();
  const System x22(Dist::power_of(Dist::exponential(1.0), 2.0));
  const System x11(Dist::exponential(1.0));
  const auto cv = convex_order_test(x22, x11, cfg, false);
  REQUIRE(cv.summary == PairOrdering::ForwardHolds);
  CHECK(star_order_test(x22, x11, cfg).holds);
}

TEST_CASE("saunders-moran D values") {
  // generalized exponential, parameter = system size n, at n=1, rate 1, x=1
  const auto fam = ParametricFamily::power_exponent(Dist::gen_exponential(1.0, 1.0));
  const double expect = (std::exp(1.0) - 1.0) * std::log(1.0 - std::exp(-1.0));
  CHECK(saunders_moran_D(fam, 1.0, 1.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(saunders_moran_D(fam, 1.0, 1.0) == doctest::Approx(-0.78816).epsilon(1e-4));

  // u-quadratic power family: D vanishes at the right endpoint
  const auto uq = ParametricFamily::power_exponent(Dist::u_quadratic(0.0, 4.0));
  CHECK(saunders_moran_D(uq, 2.0, 4.0) == 0.0);
  // singular at the density zero
  CHECK_THROWS_AS(saunders_moran_D(uq, 2.0, 2.0), domain_error);

  // scale family: D = 1/lambda independent of x
  const auto sc = ParametricFamily::scale(Dist::gen_exponential(2.0, 1.0));
  CHECK(saunders_moran_D(sc, 2.0, 0.3) == 0.5);
  CHECK(saunders_moran_D(sc, 2.0, 9.0) == 0.5);

  // generic fallback agrees with the analytic power-family route
  const auto gen = ParametricFamily::generic(
      [](double a) { return Dist::power_of(Dist::gen_exponential(1.0, 1.0), a); });
  CHECK(saunders_moran_D(gen, 1.0, 1.0) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("saunders-moran family orderings") {
  const auto fam = ParametricFamily::power_exponent(Dist::gen_exponential(1.5, 1.0));
  CHECK(sm_order_test(fam, 2.0, 3.0, sm_default_grid(fam, 2.0)) ==
        StarFamilyOrdering::DecreasingInStar);

  const auto sc = ParametricFamily::scale(Dist::gen_exponential(2.0, 1.0));
  CHECK(sm_order_test(sc, 1.0, 2.0, sm_default_grid(sc, 1.0)) ==
        StarFamilyOrdering::EquivalentInStar);

  const auto uq = ParametricFamily::power_exponent(Dist::u_quadratic(0.0, 4.0));
  CHECK(sm_order_test(uq, 2.0, 3.0, sm_default_grid(uq, 2.0)) ==
        StarFamilyOrdering::NonComparableInStar);

  CHECK_THROWS_AS(sm_order_test(fam, 2.0, 2.0, sm_default_grid(fam, 2.0)),
                  config_error);
}
