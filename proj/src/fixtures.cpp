#include "xorder/fixtures.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "xorder/asymptotics.hpp"
#include "xorder/grid.hpp"
#include "xorder/orders.hpp"
#include "xorder/system.hpp"

namespace xorder {

namespace {

struct Ctx {
  SweepConfig sweep;
  DecisionConfig decision;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

System weibull_max(double shape, double scale, int k) {
  return System(Dist::power_of(Dist::weibull(shape, scale), k));
}

System exp_parallel(std::vector<double> rates) {
  std::vector<System> parts;
  parts.reserve(rates.size());
  for (double r : rates) parts.emplace_back(Dist::exponential(r));
  return System::max_of(std::move(parts));
}

using Fixture = std::function<FixtureResult(const Ctx&)>;

struct Named {
  std::string name;
  Fixture run;
};

FixtureResult check(const std::string& name, const std::string& expected,
                    const std::string& got) {
  return {name, expected, got, expected == got};
}

FixtureResult check_tol(const std::string& name, double expected, double got,
                        double tol) {
  FixtureResult r{name, fmt(expected) + " +- " + fmt(tol), fmt(got), false};
  r.pass = std::fabs(got - expected) <= tol;
  return r;
}

// --- homogeneous parallel systems --------------------------------------

Fixture weibull_star_fixture(int k, int m, double alpha) {
  return [=](const Ctx& c) {
    const System x = weibull_max(alpha, 1.0, k);
    const System y = weibull_max(alpha, 1.0, m);
    const auto r = star_order_test(x, y, c.sweep);
    std::ostringstream name;
    name << "weibull_maxima_star_" << k << "v" << m << "_alpha" << alpha;
    return check(name.str(), "star holds", r.holds ? "star holds" : "violated");
  };
}

FixtureResult weibull_compose_derivative(const Ctx&) {
  // C(x) for the two-vs-one homogeneous Weibull parallel pair, shape 2.
  const System x = weibull_max(2.0, 1.0, 2);
  const System y = weibull_max(2.0, 1.0, 1);
  auto h = [&](double t) { return quantile_compose(x, y, t); };
  const double d1 = (h(1.0 + 1e-6) - h(1.0 - 1e-6)) / 2e-6;
  const double d0 = (h(2e-4) - h(1e-4)) / 1e-4;
  const double dinf = (h(20.0) - h(19.0)) / 1.0;
  const bool pass = std::fabs(d1 - 1.08453) <= 1e-3 && std::fabs(d0) <= 1e-3 &&
                    std::fabs(dinf - 1.0) <= 1e-3;
  return {"weibull_compose_derivative", "C'(1)=1.08453, C'(0+)=0, C'(inf)=1",
          "C'(1)=" + fmt(d1) + ", C'(0+)=" + fmt(d0) + ", C'(inf)=" + fmt(dinf), pass};
}

FixtureResult weibull_convex_non_comparable(const Ctx& c) {
  const System x = weibull_max(2.0, 1.0, 2);
  const System y = weibull_max(2.0, 1.0, 1);
  const auto r = convex_order_test(x, y, c.sweep, false);
  return check("weibull_maxima_convex_non_comparable", "violations both directions",
               r.summary == PairOrdering::BothViolated
                   ? "violations both directions"
                   : "summary=" + std::to_string(static_cast<int>(r.summary)));
}

// --- Saunders-Moran families --------------------------------------------

FixtureResult ge_family_in_n(const Ctx&) {
  const auto fam = ParametricFamily::power_exponent(Dist::gen_exponential(1.5, 1.0));
  const auto grid = sm_default_grid(fam, 2.0);
  const auto r = sm_order_test(fam, 2.0, 3.0, grid);
  return check("ge_parallel_star_in_count", "decreasing in star order",
               r == StarFamilyOrdering::DecreasingInStar ? "decreasing in star order"
                                                         : "other");
}

FixtureResult ge_family_in_shape(const Ctx&) {
  const auto fam = ParametricFamily::power_exponent(Dist::exponential(1.0));
  const auto grid = sm_default_grid(fam, 2.0);
  const auto r = sm_order_test(fam, 2.0, 3.0, grid);
  return check("ge_star_in_shape", "decreasing in star order",
               r == StarFamilyOrdering::DecreasingInStar ? "decreasing in star order"
                                                         : "other");
}

FixtureResult ge_family_in_scale(const Ctx&) {
  const auto fam = ParametricFamily::scale(Dist::gen_exponential(2.0, 1.0));
  const auto grid = sm_default_grid(fam, 1.0);
  const auto r = sm_order_test(fam, 1.0, 2.0, grid);
  const double d = saunders_moran_D(fam, 2.0, 1.7);
  const bool pass = r == StarFamilyOrdering::EquivalentInStar && d == 0.5;
  return {"ge_star_in_scale", "equivalent, D == 1/lambda exactly",
          (r == StarFamilyOrdering::EquivalentInStar ? "equivalent" : "other") +
              std::string(", D(2,1.7)=") + fmt(d),
          pass};
}

FixtureResult u_quadratic_sm(const Ctx&) {
  const auto fam = ParametricFamily::power_exponent(Dist::u_quadratic(0.0, 4.0));
  const auto grid = sm_default_grid(fam, 2.0);
  const auto r = sm_order_test(fam, 2.0, 3.0, grid);
  return check("u_quadratic_power_star", "non-comparable in star order",
               r == StarFamilyOrdering::NonComparableInStar
                   ? "non-comparable in star order"
                   : "other");
}

FixtureResult u_quadratic_star_sweep(const Ctx& c) {
  const System x(Dist::power_of(Dist::u_quadratic(0.0, 4.0), 2.0));
  const System y(Dist::u_quadratic(0.0, 4.0));
  const bool fwd = !star_order_test(x, y, c.sweep).holds;
  const bool rev = !star_order_test(y, x, c.sweep).holds;
  return check("u_quadratic_star_sweep", "violations both directions",
               fwd && rev ? "violations both directions"
                          : std::string("fwd=") + (fwd ? "viol" : "ok") +
                                " rev=" + (rev ? "viol" : "ok"));
}

FixtureResult sm_value_checks(const Ctx&) {
  // D for the generalized exponential count family at n=1, lambda=1, x=1,
  // against the closed form (e-1)*log(1-1/e).
  const auto fam = ParametricFamily::power_exponent(Dist::gen_exponential(1.0, 1.0));
  const double d = saunders_moran_D(fam, 1.0, 1.0);
  const double expect = (std::exp(1.0) - 1.0) * std::log(1.0 - std::exp(-1.0));
  const auto uq = ParametricFamily::power_exponent(Dist::u_quadratic(0.0, 4.0));
  const double d4 = saunders_moran_D(uq, 2.0, 4.0);
  const bool pass = std::fabs(d - expect) <= 1e-9 && d4 == 0.0;
  return {"saunders_moran_values", "D(1,1)=" + fmt(expect) + ", D(alpha,4)=0",
          "D(1,1)=" + fmt(d) + ", D(alpha,4)=" + fmt(d4), pass};
}

// --- non-comparability of exponential parallel systems -------------------

FixtureResult gen_kochar(const Ctx& c, const std::string& name,
                         std::vector<double> lhs, std::vector<double> rhs,
                         double expected_c) {
  const System x = exp_parallel(std::move(lhs));
  const System y = exp_parallel(std::move(rhs));
  auto h = [&](double t) { return quantile_compose(x, y, t); };
  const auto line = asymptotic_line(h);
  const auto lv = line_verdict(line, false);
  const auto verdict = decide_comparability(x, y, c.decision);
  const bool pass = std::fabs(line.slope - expected_c) <= 1e-3 &&
                    std::fabs(line.intercept) <= 1e-3 &&
                    lv == LineVerdict::NeitherConvexNorConcave &&
                    verdict.relation == Relation::NonComparable &&
                    verdict.candidate_c &&
                    std::fabs(*verdict.candidate_c - expected_c) <= 1e-9;
  return {name,
          "slope=" + fmt(expected_c) + ", intercept=0, neither convex nor concave, "
          "non-comparable",
          "slope=" + fmt(line.slope) + ", intercept=" + fmt(line.intercept) +
              ", relation=" + relation_name(verdict.relation),
          pass};
}

FixtureResult weibull_compose_line(const Ctx&) {
  const System x = weibull_max(2.0, 1.0, 2);
  const System y = weibull_max(2.0, 1.0, 1);
  auto h = [&](double t) { return quantile_compose(x, y, t); };
  const auto line = asymptotic_line(h);
  const auto lv = line_verdict(line, false);
  const bool pass = line.converged && std::fabs(line.slope - 1.0) <= 1e-3 &&
                    std::fabs(line.intercept) <= 1e-3 &&
                    lv == LineVerdict::NeitherConvexNorConcave;
  return {"weibull_compose_line", "line (1, 0), neither convex nor concave",
          "slope=" + fmt(line.slope) + ", intercept=" + fmt(line.intercept), pass};
}

FixtureResult weibull_max_min_line(const Ctx&, double scale) {
  // Parallel of two vs series of three, equal shapes: the composition
  // approaches k^(1/alpha) * x regardless of the common scale.
  const int k = 3, m = 2;
  const double alpha = 2.0;
  std::vector<System> mins, maxs;
  for (int i = 0; i < k; ++i) mins.emplace_back(Dist::weibull(alpha, scale));
  for (int i = 0; i < m; ++i) maxs.emplace_back(Dist::weibull(alpha, scale));
  const System x = System::min_of(std::move(mins));
  const System y = System::max_of(std::move(maxs));
  auto h = [&](double t) { return quantile_compose(x, y, t); };
  const auto line = asymptotic_line(h);
  const double want = std::pow(static_cast<double>(k), 1.0 / alpha);
  const bool pass = line.converged && std::fabs(line.slope - want) <= 1e-3 &&
                    std::fabs(line.intercept) <= 1e-3;
  std::ostringstream name;
  name << "weibull_series_vs_parallel_line_scale" << scale;
  return {name.str(), "slope=" + fmt(want) + ", intercept=0",
          "slope=" + fmt(line.slope) + ", intercept=" + fmt(line.intercept), pass};
}

FixtureResult exponentiated_weibull_line(const Ctx&) {
  const System x(Dist::power_of(Dist::weibull(2.0, 1.0), 2.5));
  const System y(Dist::power_of(Dist::weibull(2.0, 1.0), 1.3));
  auto h = [&](double t) { return quantile_compose(x, y, t); };
  const auto line = asymptotic_line(h);
  const auto lv = line_verdict(line, false);
  const bool pass = line.converged && std::fabs(line.slope - 1.0) <= 1e-3 &&
                    std::fabs(line.intercept) <= 1e-3 &&
                    lv == LineVerdict::NeitherConvexNorConcave;
  return {"exponentiated_weibull_line", "line (1, 0), neither convex nor concave",
          "slope=" + fmt(line.slope) + ", intercept=" + fmt(line.intercept), pass};
}

FixtureResult density_sandwich_fixture(const Ctx&) {
  const System f3 = exp_parallel({1.0, 2.0, 3.0});
  const System g2 = exp_parallel({1.5, 2.5});
  const auto grid = log_spaced(40.0, 400.0, 256);
  const auto ok = density_sandwich_check(
      [&](double x) { return f3.log_pdf(x); },
      [&](double x) { return g2.log_pdf(x); }, 1.0 / 1.5, 0.01, 40.0, grid);
  const Dist e1 = Dist::exponential(1.0);
  const auto bad = density_sandwich_check(
      [&](double x) { return e1.log_pdf(x); },
      [&](double x) { return e1.log_pdf(x); }, 2.0, 0.01, 40.0, grid);
  const bool pass = ok.pass && !bad.pass;
  return {"density_sandwich", "pass at c=1/1.5, fail at c=2",
          std::string(ok.pass ? "pass" : "fail") + " / " + (bad.pass ? "pass" : "fail"),
          pass};
}

// --- rapid variation ------------------------------------------------------

FixtureResult variation_fixture(const Ctx&, const std::string& tail,
                                const std::string& expect_class) {
  const System s(Dist::builtin_tail(tail));
  const auto cls = classify_variation(s);
  std::string got = variation_label_name(cls.label);
  if (cls.label == VariationLabel::RegularlyVarying && cls.index)
    got += " index=" + fmt(*cls.index);
  bool pass = got.starts_with(expect_class);
  if (tail == "inv_quadratic")
    pass = pass && cls.index && std::fabs(*cls.index + 2.0) <= 0.05;
  if (tail == "exp_log_squared") pass = pass && cls.erpv && *cls.erpv == false;
  return {"variation_" + tail, expect_class, got, pass};
}

FixtureResult erpv_probe_fixture(const Ctx&) {
  const Dist e1 = Dist::exponential(1.0);
  const auto pe = erpv_probe([&](double x) { return e1.log_tail(x); }, 1.0);
  const Dist els = Dist::builtin_tail("exp_log_squared");
  const auto pl = erpv_probe([&](double x) { return els.log_tail(x); }, 1.0);
  const bool pass = pe.converged() && std::fabs(pe.value - std::exp(-1.0)) <= 1e-3 &&
                    pl.converged() && std::fabs(pl.value - 1.0) <= 1e-3;
  return {"erpv_probe_limits", "exp: 0.367879, exp_log_squared: 1",
          "exp: " + fmt(pe.value) + ", exp_log_squared: " + fmt(pl.value), pass};
}

// --- applications: mixed families and dependence --------------------------

FixtureResult non_comparable_fixture(const Ctx& c, const std::string& name,
                                     const System& x, const System& y,
                                     double expected_c, const std::string& note = "") {
  const auto ratio = tail_ratio_limit([&](double t) { return x.log_tail(t); },
                                      [&](double t) { return y.log_tail(t); },
                                      expected_c, c.decision.seq);
  const auto verdict = decide_comparability(x, y, c.decision);
  const bool pass = ratio.converged() && std::fabs(ratio.value - 1.0) <= 1e-3 &&
                    verdict.relation == Relation::NonComparable &&
                    verdict.candidate_c &&
                    std::fabs(*verdict.candidate_c - expected_c) <= 1e-9;
  FixtureResult r{name,
                  "tail ratio 1 at c=" + fmt(expected_c) + ", non-comparable" +
                      (note.empty() ? "" : " (" + note + ")"),
                  "ratio=" + fmt(ratio.value) +
                      ", relation=" + relation_name(verdict.relation) +
                      (verdict.candidate_c ? ", c=" + fmt(*verdict.candidate_c) : ""),
                  false};
  r.pass = pass;
  return r;
}

System weibull_parallel(double alpha, std::vector<double> scales) {
  std::vector<System> parts;
  for (double s : scales) parts.emplace_back(Dist::weibull(alpha, s));
  return System::max_of(std::move(parts));
}

System gamma_parallel(std::vector<std::pair<int, double>> comps) {
  std::vector<System> parts;
  for (auto [shape, rate] : comps) parts.emplace_back(Dist::gamma_int(shape, rate));
  return System::max_of(std::move(parts));
}

System ge_min(std::vector<std::pair<double, double>> comps) {
  std::vector<System> parts;
  for (auto [shape, rate] : comps) parts.emplace_back(Dist::gen_exponential(shape, rate));
  return System::min_of(std::move(parts));
}

System ge_max(std::vector<std::pair<double, double>> comps) {
  std::vector<System> parts;
  for (auto [shape, rate] : comps) parts.emplace_back(Dist::gen_exponential(shape, rate));
  return System::max_of(std::move(parts));
}

FixtureResult scale_equivalence_fixture(const Ctx& c) {
  const System x = exp_parallel({1.0, 2.0});
  const auto verdict = decide_comparability(x, x.scaled(3.0), c.decision);
  const bool pass = verdict.relation == Relation::ScaleEquivalent && verdict.scale_k &&
                    std::fabs(*verdict.scale_k - 3.0) <= 1e-12;
  return {"scale_equivalent_shortcut", "scale-equivalent, k=3",
          relation_name(verdict.relation) +
              (verdict.scale_k ? ", k=" + fmt(*verdict.scale_k) : ""),
          pass};
}

FixtureResult fgm_zero_matches_independent(const Ctx&) {
  const System indep = exp_parallel({1.0, 2.0});
  const System fgm = System::max_of_fgm(
      {System(Dist::exponential(1.0)), System(Dist::exponential(2.0))}, {0.0});
  double worst = 0.0;
  for (double x : log_spaced(1e-3, 30.0, 257))
    worst = std::max(worst, std::fabs(indep.cdf(x) - fgm.cdf(x)));
  return check_tol("fgm_zero_matches_independent", 0.0, worst, 1e-13);
}

FixtureResult exp_maxima_convex_supported(const Ctx& c) {
  // Two-component homogeneous parallel vs a single component: the larger
  // system ages faster, and the star order must agree with the convex one.
  const System x = System(Dist::power_of(Dist::exponential(1.0), 2.0));
  const System y = System(Dist::exponential(1.0));
  const auto r = convex_order_test(x, y, c.sweep, true);
  const bool star_ok = star_order_test(x, y, c.sweep).holds;
  const bool pass = r.summary == PairOrdering::ForwardHolds && star_ok;
  return {"exp_maxima_convex_supported", "forward holds, star agrees",
          std::string("summary=") + std::to_string(static_cast<int>(r.summary)) +
              ", star=" + (star_ok ? "holds" : "violated"),
          pass};
}

std::vector<Named> paper_suite() {
  std::vector<Named> out;
  // homogeneous Weibull parallel systems: star order holds
  for (const auto& km : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {5, 2}})
    for (double alpha : {0.5, 1.0, 2.0}) {
      std::ostringstream name;
      name << "weibull_maxima_star_" << km.first << "v" << km.second << "_alpha"
           << alpha;
      out.push_back({name.str(), weibull_star_fixture(km.first, km.second, alpha)});
    }
  out.push_back({"weibull_compose_derivative",
                 [](const Ctx& c) { return weibull_compose_derivative(c); }});
  out.push_back({"weibull_maxima_convex_non_comparable",
                 [](const Ctx& c) { return weibull_convex_non_comparable(c); }});
  out.push_back({"ge_parallel_star_in_count", [](const Ctx& c) { return ge_family_in_n(c); }});
  out.push_back({"ge_star_in_shape", [](const Ctx& c) { return ge_family_in_shape(c); }});
  out.push_back({"ge_star_in_scale", [](const Ctx& c) { return ge_family_in_scale(c); }});
  out.push_back({"u_quadratic_power_star", [](const Ctx& c) { return u_quadratic_sm(c); }});
  out.push_back(
      {"u_quadratic_star_sweep", [](const Ctx& c) { return u_quadratic_star_sweep(c); }});
  out.push_back({"saunders_moran_values", [](const Ctx& c) { return sm_value_checks(c); }});
  out.push_back({"exp_parallel_3v2", [](const Ctx& c) {
                   return gen_kochar(c, "exp_parallel_3v2", {1.0, 2.0, 3.0}, {1.5, 2.5},
                                     1.0 / 1.5);
                 }});
  out.push_back({"exp_parallel_2v2_unit_c", [](const Ctx& c) {
                   return gen_kochar(c, "exp_parallel_2v2_unit_c", {1.0, 2.0}, {1.0, 3.0},
                                     1.0);
                 }});
  out.push_back({"exp_parallel_matched_sums", [](const Ctx& c) {
                   return gen_kochar(c, "exp_parallel_matched_sums", {1.0, 3.0},
                                     {1.5, 2.5}, 1.0 / 1.5);
                 }});
  out.push_back({"weibull_compose_line", [](const Ctx& c) { return weibull_compose_line(c); }});
  out.push_back({"weibull_series_vs_parallel_line_scale1",
                 [](const Ctx& c) { return weibull_max_min_line(c, 1.0); }});
  out.push_back({"exponentiated_weibull_line",
                 [](const Ctx& c) { return exponentiated_weibull_line(c); }});
  out.push_back({"density_sandwich", [](const Ctx& c) { return density_sandwich_fixture(c); }});
  out.push_back({"variation_inv_log", [](const Ctx& c) {
                   return variation_fixture(c, "inv_log", "slowly_varying");
                 }});
  out.push_back({"variation_inv_quadratic", [](const Ctx& c) {
                   return variation_fixture(c, "inv_quadratic", "rv");
                 }});
  out.push_back({"variation_exp_log_squared", [](const Ctx& c) {
                   return variation_fixture(c, "exp_log_squared", "rpv_minus_inf");
                 }});
  out.push_back({"erpv_probe_limits", [](const Ctx& c) { return erpv_probe_fixture(c); }});
  out.push_back({"weibull_parallel_alpha05", [](const Ctx& c) {
                   return non_comparable_fixture(
                       c, "weibull_parallel_alpha05",
                       weibull_parallel(0.5, {1.0, 2.0}),
                       weibull_parallel(0.5, {1.5, 2.5}), 1.0 / 1.5);
                 }});
  out.push_back({"weibull_parallel_alpha2", [](const Ctx& c) {
                   return non_comparable_fixture(
                       c, "weibull_parallel_alpha2", weibull_parallel(2.0, {1.0, 2.0}),
                       weibull_parallel(2.0, {1.5, 2.5}), 1.0 / 1.5);
                 }});
  out.push_back({"gamma_parallel_leading_terms", [](const Ctx& c) {
                   return non_comparable_fixture(
                       c, "gamma_parallel_leading_terms",
                       gamma_parallel({{2, 1.0}, {2, 2.0}}),
                       gamma_parallel({{2, 1.5}, {2, 2.5}}), 1.0 / 1.5,
                       "verdict from computed leading terms; the equal-largest-index "
                       "parameter reading does not hold here");
                 }});
  out.push_back({"ge_min_product_matched", [](const Ctx& c) {
                   return non_comparable_fixture(
                       c, "ge_min_product_matched", ge_min({{2.0, 1.0}, {3.0, 2.0}}),
                       ge_min({{2.0, 1.5}, {3.0, 2.5}}), 3.0 / 4.0);
                 }});
  out.push_back({"ge_max_first_shape_matched", [](const Ctx& c) {
                   return non_comparable_fixture(
                       c, "ge_max_first_shape_matched", ge_max({{2.0, 1.0}, {3.0, 2.0}}),
                       ge_max({{2.0, 1.5}, {5.0, 2.5}}), 1.0 / 1.5);
                 }});
  out.push_back({"series_of_parallel_exponential", [](const Ctx& c) {
                   const System w = System::min_of({exp_parallel({1.0, 2.0}),
                                                    exp_parallel({1.0, 2.0})});
                   const System z = System::min_of({exp_parallel({1.5, 2.5}),
                                                    exp_parallel({1.5, 2.5})});
                   return non_comparable_fixture(c, "series_of_parallel_exponential", w, z,
                                                 2.0 / 3.0);
                 }});
  out.push_back({"fgm_exponential_parallel", [](const Ctx& c) {
                   const System x = exp_parallel({1.0, 2.0});
                   const System y = System::max_of_fgm(
                       {System(Dist::exponential(1.5)), System(Dist::exponential(2.5))},
                       {0.5});
                   return non_comparable_fixture(c, "fgm_exponential_parallel", x, y,
                                                 1.0 / 1.5);
                 }});
  out.push_back({"fgm_weibull_parallel", [](const Ctx& c) {
                   const System x = System::max_of(
                       {System(Dist::weibull(2.0, 1.0)), System(Dist::weibull(3.0, 1.0))});
                   const System y = System::max_of_fgm(
                       {System(Dist::weibull(2.0, 1.5)), System(Dist::weibull(3.0, 2.0))},
                       {0.6});
                   return non_comparable_fixture(c, "fgm_weibull_parallel", x, y,
                                                 1.0 / 1.5);
                 }});
  out.push_back({"scale_equivalent_shortcut",
                 [](const Ctx& c) { return scale_equivalence_fixture(c); }});
  return out;
}

std::vector<Named> extras_suite() {
  std::vector<Named> out;
  out.push_back({"fgm_zero_matches_independent",
                 [](const Ctx& c) { return fgm_zero_matches_independent(c); }});
  out.push_back({"weibull_series_vs_parallel_line_scale2",
                 [](const Ctx& c) { return weibull_max_min_line(c, 2.0); }});
  out.push_back({"exp_maxima_convex_supported",
                 [](const Ctx& c) { return exp_maxima_convex_supported(c); }});
  return out;
}

}  // namespace

std::vector<FixtureResult> run_fixture_suite(const std::string& suite,
                                             const FixtureOptions& opts) {
  Ctx ctx;
  ctx.sweep.sign_eps = opts.sign_tol;
  ctx.sweep.execution = opts.execution;
  ctx.decision.sweep = ctx.sweep;

  std::vector<Named> fixtures;
  if (suite == "paper" || suite == "all") {
    fixtures = paper_suite();
  } else {
    throw validation_error("fixtures: unknown suite '" + suite + "'");
  }
  if (suite == "all") {
    auto extra = extras_suite();
    fixtures.insert(fixtures.end(), extra.begin(), extra.end());
  }

  std::vector<FixtureResult> results;
  results.reserve(fixtures.size());
  for (const auto& f : fixtures) results.push_back(f.run(ctx));
  return results;
}

}  // namespace xorder
