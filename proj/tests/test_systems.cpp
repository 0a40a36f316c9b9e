#include <cmath>
#include <random>

#include "doctest.h"
#include "support/montecarlo.hpp"
#include "xorder/grid.hpp"
#include "xorder/system.hpp"

using namespace xorder;

namespace {

System exp_parallel(std::initializer_list<double> rates) {
  std::vector<System> parts;
  for (double r : rates) parts.emplace_back(Dist::exponential(r));
  return System::max_of(std::move(parts));
}

}  // namespace

TEST_CASE("independent max and min evaluate as products") {
  const System mx = exp_parallel({1.0, 2.0});
  CHECK(mx.cdf(std::log(2.0)) == doctest::Approx(0.375).epsilon(1e-14));

  const System mn = System::min_of({System(Dist::gen_exponential(2.0, 1.0)),
                                    System(Dist::gen_exponential(3.0, 1.0))});
  CHECK(mn.tail(std::log(2.0)) ==
        doctest::Approx((3.0 / 4.0) * (7.0 / 8.0)).epsilon(1e-14));

  // duality on a probe grid: max cdf = prod cdfs, min tail = prod tails
  const System a(Dist::weibull(1.5, 1.0)), b(Dist::gamma_int(2, 2.0));
  const System mx2 = System::max_of({a, b});
  const System mn2 = System::min_of({a, b});
  for (double x : log_spaced(1e-3, 20.0, 65)) {
    CHECK(mx2.cdf(x) == doctest::Approx(a.cdf(x) * b.cdf(x)).epsilon(1e-12));
    CHECK(mn2.tail(x) == doctest::Approx(a.tail(x) * b.tail(x)).epsilon(1e-12));
    CHECK(std::fabs(mx2.cdf(x) + mx2.tail(x) - 1.0) <= 1e-12);
    CHECK(std::fabs(mn2.cdf(x) + mn2.tail(x) - 1.0) <= 1e-12);
  }
}

TEST_CASE("max tail stays accurate far past linear-space underflow") {
  const System mx = exp_parallel({1.0, 2.0, 3.0});
  // dominant component: tail ~ e^{-x}
  CHECK(mx.log_tail(2000.0) == doctest::Approx(-2000.0).epsilon(1e-12));
  CHECK(mx.log_tail(1e6) == doctest::Approx(-1e6).epsilon(1e-12));
  // density of the max follows the smallest rate as well
  CHECK(mx.log_pdf(2000.0) == doctest::Approx(-2000.0).epsilon(1e-12));
}

TEST_CASE("pdf of composite nodes matches a numerical derivative") {
  const System mx = System::max_of({System(Dist::weibull(2.0, 1.0)),
                                    System(Dist::exponential(1.5))});
  const System mn = System::min_of({System(Dist::gamma_int(2, 1.0)),
                                    System(Dist::gen_exponential(2.0, 1.0))});
  for (const System& s : {mx, mn}) {
    for (double x : {0.3, 0.8, 1.7, 3.1}) {
      const double h = 1e-6 * x;
      const double num = (s.cdf(x + h) - s.cdf(x - h)) / (2.0 * h);
      CHECK(s.pdf(x) == doctest::Approx(num).epsilon(1e-6));
    }
  }
}

TEST_CASE("fgm construction guards") {
  auto leaves = [] {
    return std::vector<System>{System(Dist::exponential(1.0)),
                               System(Dist::exponential(2.0)),
                               System(Dist::exponential(3.0))};
  };
  // |0.6| + |0.5| > 1 over three margins
  CHECK_THROWS_WITH_AS(System::max_of_fgm(leaves(), {0.6, 0.5, 0.0}),
                       doctest::Contains("sum |c_ij|"), validation_error);
  // wrong coefficient count
  CHECK_THROWS_AS(System::max_of_fgm(leaves(), {0.5}), validation_error);
  // unsupported margins
  CHECK_THROWS_AS(System::max_of_fgm({System(Dist::gamma_int(2, 1.0)),
                                      System(Dist::exponential(1.0))},
                                     {0.3}),
                  validation_error);
  // dependence only on max-of-leaves nodes
  CHECK_THROWS_AS(System::max_of_fgm({exp_parallel({1.0, 2.0}),
                                      System(Dist::exponential(1.0))},
                                     {0.3}),
                  validation_error);
  // depth cap: min of max of max
  CHECK_THROWS_AS(
      System::min_of({System::max_of({exp_parallel({1.0, 2.0})})}),
      validation_error);
}

TEST_CASE("fgm with zero coefficients degenerates to independence") {
  const System indep = exp_parallel({1.0, 2.0});
  const System fgm = System::max_of_fgm(
      {System(Dist::exponential(1.0)), System(Dist::exponential(2.0))}, {0.0});
  for (double x : log_spaced(1e-3, 30.0, 129))
    CHECK(fgm.cdf(x) == doctest::Approx(indep.cdf(x)).epsilon(1e-13));
}

TEST_CASE("fgm cdf is a valid cdf for admissible coefficient sets") {
  std::mt19937_64 rng(20240811u);
  auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t k = 2 + rng() % 2;  // 2 or 3 margins
    std::vector<System> margins;
    for (std::size_t i = 0; i < k; ++i)
      margins.emplace_back(Dist::exponential(0.5 + 2.0 * u01()));
    std::vector<double> c(k * (k - 1) / 2);
    double budget = 1.0;
    for (auto& ci : c) {
      ci = (2.0 * u01() - 1.0) * budget;
      budget -= std::fabs(ci);
    }
    const System s = System::max_of_fgm(std::move(margins), std::move(c));
    double prev = 0.0;
    for (double x : log_spaced(1e-4, 60.0, 257)) {
      const double F = s.cdf(x);
      CHECK(F >= prev - 1e-12);
      CHECK(F >= -1e-12);
      CHECK(F <= 1.0 + 1e-12);
      prev = F;
    }
    CHECK(s.cdf(1e-8) <= 1e-6);
    CHECK(s.cdf(80.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("leading asymptotes of the worked systems") {
  // dominant exponential of a heterogeneous parallel block
  const auto l1 = leading_asymptote(exp_parallel({1.0, 2.0, 3.0}));
  CHECK(l1.coefficient == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l1.rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l1.alpha == doctest::Approx(1.0));
  CHECK(l1.degree == doctest::Approx(0.0));

  // series of two identical parallel blocks: rate = min over pairs of rate
  // sums, coefficient = multiplicity of that minimum
  const System block = exp_parallel({1.0, 2.0});
  const auto l2 = leading_asymptote(System::min_of({block, block}));
  CHECK(l2.rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(l2.coefficient == doctest::Approx(1.0).epsilon(1e-12));

  const System blockb = exp_parallel({1.0, 1.0});
  const auto l2b = leading_asymptote(System::min_of({blockb, blockb}));
  CHECK(l2b.rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(l2b.coefficient == doctest::Approx(4.0).epsilon(1e-12));

  // series of generalized exponentials: product of shapes, sum of rates
  const auto l3 = leading_asymptote(System::min_of(
      {System(Dist::gen_exponential(2.0, 1.0)), System(Dist::gen_exponential(3.0, 2.0))}));
  CHECK(l3.coefficient == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(l3.rate == doctest::Approx(3.0).epsilon(1e-12));

  // polynomial prefactor from an integer-shape gamma component
  const auto l4 = leading_asymptote(System::max_of(
      {System(Dist::gamma_int(2, 1.0)), System(Dist::gamma_int(2, 2.0))}));
  CHECK(l4.rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l4.degree == doctest::Approx(1.0));
  CHECK(l4.coefficient == doctest::Approx(1.0).epsilon(1e-9));

  // mixed-shape weibull parallel: the smaller shape decays slower
  const auto l5 = leading_asymptote(System::max_of(
      {System(Dist::weibull(2.0, 1.5)), System(Dist::weibull(3.0, 1.0))}));
  CHECK(l5.alpha == doctest::Approx(2.0));
  CHECK(l5.rate == doctest::Approx(1.5).epsilon(1e-12));

  // bounded support has no exponential asymptote
  CHECK_THROWS_AS(leading_asymptote(System(Dist::u_quadratic(0.0, 4.0))),
                  domain_error);
}

TEST_CASE("leading asymptote matches the tail where it is ~1e-8") {
  const std::vector<System> fixtures = {
      exp_parallel({1.0, 2.0, 3.0}),
      System::min_of({exp_parallel({1.0, 2.0}), exp_parallel({1.0, 2.0})}),
      System::max_of({System(Dist::weibull(0.5, 1.0)), System(Dist::weibull(0.5, 2.0))}),
      System::max_of({System(Dist::gamma_int(2, 1.0)), System(Dist::gamma_int(2, 2.0))}),
      System::min_of({System(Dist::gen_exponential(2.0, 1.0)),
                      System(Dist::gen_exponential(3.0, 2.0))}),
      System::max_of_fgm(
          {System(Dist::exponential(1.5)), System(Dist::exponential(2.5))}, {0.5}),
  };
  for (const auto& s : fixtures) {
    const auto lead = leading_asymptote(s);
    const double x = s.inverse_log_tail(std::log(1e-8));
    const double approx_log = std::log(lead.coefficient) +
                              lead.degree * std::log(x) -
                              std::pow(lead.rate * x, lead.alpha);
    CHECK(std::fabs(std::exp(s.log_tail(x) - approx_log) - 1.0) <= 0.01);
  }
}

TEST_CASE("system scale equivalence") {
  const System a = exp_parallel({1.0, 2.0});
  const System b = exp_parallel({3.0, 6.0});
  const auto k = scale_equivalent(a, b);
  REQUIRE(k.has_value());
  CHECK(*k == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_FALSE(scale_equivalent(a, exp_parallel({3.0, 5.0})));
  CHECK_FALSE(scale_equivalent(a, System(Dist::exponential(1.0))));

  const auto k2 = scale_equivalent(a, a.scaled(3.0));
  REQUIRE(k2.has_value());
  CHECK(*k2 == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("monte carlo oracle agrees with the evaluators") {
  const System mx = exp_parallel({1.0, 2.0});
  CHECK(xorder::testsupport::mc_cdf_sup_distance(mx, 200000, 1u) <= 5e-3);
  const System mn = System::min_of({System(Dist::gen_exponential(2.0, 1.0)),
                                    System(Dist::weibull(1.5, 1.0))});
  CHECK(xorder::testsupport::mc_cdf_sup_distance(mn, 200000, 2u) <= 5e-3);
}

TEST_CASE("system quantile round-trip") {
  const System mx = System::max_of({System(Dist::weibull(2.0, 1.0)),
                                    System(Dist::gamma_int(2, 1.5))});
  for (double p : {1e-6, 1e-3, 0.5, 0.999, 1.0 - 1e-8}) {
    CHECK(std::fabs(mx.cdf(mx.quantile(p)) - p) <= 1e-10);
  }
}
