#include <cmath>
#include <vector>

#include "doctest.h"
#include "xorder/distribution.hpp"
#include "xorder/grid.hpp"

using namespace xorder;

namespace {

std::vector<Dist> family_zoo() {
  return {
      Dist::exponential(1.0),
      Dist::exponential(2.5),
      Dist::weibull(2.0, 1.0),
      Dist::weibull(0.5, 3.0),
      Dist::gamma_int(1, 1.0),
      Dist::gamma_int(3, 0.7),
      Dist::gen_exponential(2.0, 1.0),
      Dist::gen_exponential(0.4, 2.0),
      Dist::u_quadratic(0.0, 4.0),
      Dist::u_quadratic(1.0, 3.5),
      Dist::power_of(Dist::weibull(2.0, 1.0), 3.0),
      Dist::power_of(Dist::gen_exponential(1.5, 1.0), 2.0),
      Dist::tail_power_of(Dist::weibull(1.5, 1.0), 2.0),
      Dist::builtin_tail("inv_quadratic"),
  };
}

// Probe grid inside the law's support, log-spaced across the bulk.
std::vector<double> probe_grid(const Dist& d, std::size_t n = 129) {
  return log_spaced(d.quantile(1e-9) * (1.0 + 1e-12) + 1e-300,
                    d.quantile(1.0 - 1e-9), n);
}

}  // namespace

TEST_CASE("closed-form tail values") {
  CHECK(Dist::exponential(1.0).tail(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  // integer-shape gamma: tail(x) = e^{-x} (1 + x) at shape 2, rate 1
  CHECK(Dist::gamma_int(2, 1.0).tail(1.0) ==
        doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-14));
  // the u-quadratic density vanishes at the vertex
  CHECK(Dist::u_quadratic(0.0, 4.0).pdf(2.0) == 0.0);
  CHECK(Dist::u_quadratic(0.0, 4.0).pdf(1.0) ==
        doctest::Approx(3.0 / 16.0).epsilon(1e-14));
  CHECK(Dist::u_quadratic(0.0, 4.0).cdf(1.0) ==
        doctest::Approx(((1.0 - 2.0) * (1.0 - 2.0) * (1.0 - 2.0) + 8.0) / 16.0)
            .epsilon(1e-14));
}

TEST_CASE("quantile closed forms and bisection") {
  CHECK(Dist::exponential(2.0).quantile(1.0 - std::exp(-2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Dist::power_of(Dist::exponential(1.0), 2.0).quantile(0.25) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // bisection against the closed-form integer-gamma tail
  CHECK(std::fabs(Dist::gamma_int(2, 1.0).quantile(1.0 - 2.0 / std::exp(1.0)) - 1.0) <=
        1e-10);
}

TEST_CASE("quantile round-trip across the family zoo") {
  std::vector<double> ps;
  for (double e = -6.0; e <= -1.0; e += 0.5) {
    ps.push_back(std::pow(10.0, e));
    ps.push_back(1.0 - std::pow(10.0, e));
  }
  for (const auto& d : family_zoo()) {
    for (double p : ps) {
      const double q = d.quantile(p);
      CHECK(std::fabs(d.cdf(q) - p) <= 1e-10);
    }
  }
}

TEST_CASE("cdf + tail identity, monotonicity, nonnegative density") {
  for (const auto& d : family_zoo()) {
    double prev = -1.0;
    for (double x : probe_grid(d)) {
      const double c = d.cdf(x), t = d.tail(x);
      CHECK(std::fabs(c + t - 1.0) <= 1e-12);
      CHECK(c >= prev - 1e-13);
      CHECK(d.pdf(x) >= 0.0);
      prev = c;
    }
  }
}

TEST_CASE("log tail agrees with the direct formulas") {
  const Dist w = Dist::weibull(1.7, 2.2);
  const Dist ge = Dist::gen_exponential(2.3, 1.1);
  const Dist g = Dist::gamma_int(3, 1.4);
  for (double x : {0.1, 0.9, 3.0, 11.0}) {
    CHECK(w.tail(x) ==
          doctest::Approx(std::exp(-std::pow(2.2 * x, 1.7))).epsilon(1e-13));
    CHECK(ge.tail(x) ==
          doctest::Approx(1.0 - std::pow(1.0 - std::exp(-1.1 * x), 2.3)).epsilon(1e-12));
    const double lx = 1.4 * x;
    CHECK(g.tail(x) ==
          doctest::Approx(std::exp(-lx) * (1.0 + lx + lx * lx / 2.0)).epsilon(1e-13));
  }
  // deep tail: the log form keeps going long after linear space underflows
  CHECK(w.log_tail(1e6) == doctest::Approx(-std::pow(2.2e6, 1.7)));
  CHECK(ge.log_tail(1e5) == doctest::Approx(std::log(2.3) - 1.1e5).epsilon(1e-12));
}

TEST_CASE("integer-gamma tail cross-checked by quadrature") {
  for (int shape : {2, 3, 4}) {
    const Dist d = Dist::gamma_int(shape, 1.3);
    for (double x : {0.5, 1.0, 2.5}) {
      // Simpson integration of the density over [0, x]
      const std::size_t n = 4000;
      const double h = x / static_cast<double>(n);
      double acc = d.pdf(0.0) + d.pdf(x);
      for (std::size_t i = 1; i < n; ++i)
        acc += d.pdf(h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
      const double cdf_quad = acc * h / 3.0;
      CHECK(std::fabs(cdf_quad - d.cdf(x)) <= 1e-8);
    }
  }
}

TEST_CASE("power of an exponential is the generalized exponential") {
  const Dist a = Dist::power_of(Dist::exponential(1.3), 2.7);
  const Dist b = Dist::gen_exponential(2.7, 1.3);
  for (double x : probe_grid(b)) {
    CHECK(std::fabs(a.cdf(x) - b.cdf(x)) <= 1e-12);
    CHECK(std::fabs(a.tail(x) - b.tail(x)) <= 1e-12);
    CHECK(a.log_tail(x) == doctest::Approx(b.log_tail(x)).epsilon(1e-12));
    CHECK(a.pdf(x) == doctest::Approx(b.pdf(x)).epsilon(1e-11));
  }
}

TEST_CASE("failure-rate classification") {
  CHECK(classify_failure_rate(Dist::exponential(1.0)).label == AgeingLabel::ConstantFR);
  CHECK(classify_failure_rate(Dist::weibull(2.0, 1.0)).label == AgeingLabel::IFR);
  CHECK(classify_failure_rate(Dist::weibull(0.5, 1.0)).label == AgeingLabel::DFR);
  CHECK(classify_failure_rate(Dist::gamma_int(3, 1.0)).label == AgeingLabel::IFR);
  CHECK(classify_failure_rate(Dist::u_quadratic(0.0, 4.0)).label ==
        AgeingLabel::NonMonotoneFR);

  const Dist e = Dist::exponential(3.0);
  const std::vector<double> grid = {0.5, 1.0, 2.0};
  CHECK(classify_failure_rate(e, grid).label == AgeingLabel::ConstantFR);
  const std::vector<double> bad = {2.0, 1.0};
  CHECK_THROWS_AS(classify_failure_rate(e, bad), domain_error);
  const std::vector<double> outside = {3.0, 5.0};
  CHECK_THROWS_AS(classify_failure_rate(Dist::u_quadratic(0.0, 4.0), outside),
                  domain_error);
}

TEST_CASE("scale equivalence is decided on parameters") {
  auto k = scale_equivalent(Dist::exponential(1.0), Dist::exponential(3.0));
  REQUIRE(k.has_value());
  CHECK(*k == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  k = scale_equivalent(Dist::weibull(2.0, 1.0), Dist::weibull(2.0, 5.0));
  REQUIRE(k.has_value());
  CHECK(*k == doctest::Approx(0.2).epsilon(1e-15));

  CHECK_FALSE(scale_equivalent(Dist::exponential(1.0), Dist::weibull(2.0, 1.0)));
  CHECK_FALSE(scale_equivalent(Dist::weibull(2.0, 1.0), Dist::weibull(2.5, 1.0)));

  // cross-family canonical form
  k = scale_equivalent(Dist::gen_exponential(2.0, 1.0),
                       Dist::power_of(Dist::exponential(4.0), 2.0));
  REQUIRE(k.has_value());
  CHECK(*k == doctest::Approx(0.25).epsilon(1e-15));

  k = scale_equivalent(Dist::u_quadratic(0.0, 4.0), Dist::u_quadratic(0.0, 8.0));
  REQUIRE(k.has_value());
  CHECK(*k == doctest::Approx(2.0).epsilon(1e-15));

  // verify the defining identity F_a(x) = F_b(k x) on a grid
  const Dist a = Dist::gamma_int(2, 1.0), b = Dist::gamma_int(2, 4.0);
  k = scale_equivalent(a, b);
  REQUIRE(k.has_value());
  for (double x : probe_grid(a, 65))
    CHECK(a.cdf(x) == doctest::Approx(b.cdf(*k * x)).epsilon(1e-12));
}

TEST_CASE("scaling produces the law of k*X") {
  const Dist d = Dist::gen_exponential(1.7, 2.0);
  const Dist s = d.scaled(3.0);
  for (double x : probe_grid(d, 33))
    CHECK(s.cdf(3.0 * x) == doctest::Approx(d.cdf(x)).epsilon(1e-12));
}

TEST_CASE("domain and validation errors") {
  CHECK_THROWS_AS(Dist::exponential(0.0), validation_error);
  CHECK_THROWS_AS(Dist::weibull(-1.0, 1.0), validation_error);
  CHECK_THROWS_AS(Dist::gamma_int(0, 1.0), validation_error);
  CHECK_THROWS_AS(Dist::u_quadratic(2.0, 2.0), validation_error);
  CHECK_THROWS_AS(Dist::u_quadratic(-1.0, 2.0), validation_error);
  CHECK_THROWS_AS(Dist::builtin_tail("nope"), validation_error);

  const Dist e = Dist::exponential(1.0);
  CHECK_THROWS_AS(evaluate(e, -0.5, Functional::Cdf), domain_error);
  CHECK_THROWS_AS(e.quantile(0.0), domain_error);
  CHECK_THROWS_AS(e.quantile(1.0), domain_error);
  CHECK_THROWS_AS(Dist::u_quadratic(0.0, 4.0).failure_rate(4.0), domain_error);
  // tail level unreachable below the bracket cap
  CHECK_THROWS_AS(Dist::builtin_tail("inv_log").inverse_log_tail(-1e4), range_error);
}

TEST_CASE("functional dispatch") {
  const Dist d = Dist::weibull(2.0, 1.0);
  CHECK(evaluate(d, 1.0, Functional::Cdf) == doctest::Approx(d.cdf(1.0)));
  CHECK(evaluate(d, 1.0, Functional::Tail) == doctest::Approx(d.tail(1.0)));
  CHECK(evaluate(d, 1.0, Functional::LogTail) == doctest::Approx(d.log_tail(1.0)));
  CHECK(evaluate(d, 1.0, Functional::Pdf) == doctest::Approx(d.pdf(1.0)));
  // weibull failure rate is alpha * scale^alpha * x^(alpha-1)
  CHECK(evaluate(d, 3.0, Functional::FailureRate) == doctest::Approx(6.0).epsilon(1e-12));
}
