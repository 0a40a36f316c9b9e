// Command-line front end: compare two lifetime systems, classify a tail's
// variation, export h/V/D curves, or run the bundled fixture suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "xorder/asymptotics.hpp"
#include "xorder/config.hpp"
#include "xorder/fixtures.hpp"
#include "xorder/grid.hpp"
#include "xorder/orders.hpp"
#include "xorder/serialization.hpp"

namespace {

using namespace xorder;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw validation_error("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write '" + path + "'");
  out << text;
}

DecisionConfig decision_config(const RunConfig& rc) {
  rc.validate();
  DecisionConfig dc;
  dc.sweep.grid_size = rc.grid_size;
  dc.sweep.sign_eps = rc.sign_tol;
  dc.sweep.x_cap = rc.x_max;
  dc.sweep.a_points = rc.a_points;
  dc.sweep.b_points = rc.b_points;
  return dc;
}

int cmd_compare(const std::string& lhs_path, const std::string& rhs_path,
                const std::string& out_path, const std::string& curves_prefix,
                const RunConfig& rc) {
  const System lhs = system_from_json(load_json(lhs_path));
  const System rhs = system_from_json(load_json(rhs_path));
  const DecisionConfig dc = decision_config(rc);
  const ComparisonVerdict verdict = decide_comparability(lhs, rhs, dc);
  const std::string doc = to_json(verdict).dump(2) + "\n";
  if (out_path.empty() || out_path == "-")
    std::cout << doc;
  else
    write_text(out_path, doc);

  if (!curves_prefix.empty()) {
    const auto xs = comparison_grid(lhs, rhs, dc.sweep);
    Curve h;
    h.x = xs;
    h.value.reserve(xs.size());
    for (double x : xs) h.value.push_back(quantile_compose(lhs, rhs, x));
    std::ofstream hc(curves_prefix + "_h.csv", std::ios::binary);
    write_curve_csv(hc, h);
    std::size_t widx = 0;
    for (const auto& e : verdict.evidence) {
      if (!e.witness || widx >= 4) continue;
      Curve v;
      v.x = xs;
      v.value.reserve(xs.size());
      for (double x : xs)
        v.value.push_back(exp_diff(
            rhs.log_tail(x),
            (e.witness->a * x + e.witness->b) <= 0.0
                ? 0.0
                : lhs.log_tail(e.witness->a * x + e.witness->b)));
      std::ofstream vc(curves_prefix + "_V" + std::to_string(widx++) + ".csv",
                       std::ios::binary);
      write_curve_csv(vc, v);
    }
  }
  return verdict.relation == Relation::Inconclusive ? 2 : 0;
}

int cmd_classify(const std::string& dist_path, const std::string& out_path) {
  const System s = system_from_json(load_json(dist_path));
  const VariationClass cls = classify_variation(s);
  const std::string doc = to_json(cls).dump(2) + "\n";
  if (out_path.empty() || out_path == "-")
    std::cout << doc;
  else
    write_text(out_path, doc);
  return 0;
}

struct CurveArgs {
  std::string kind;
  std::string lhs, rhs, dist, param = "power";
  double a = 1.0, b = 0.0, alpha = 2.0;
  std::optional<double> xmin, xmax;
  std::size_t grid = 4096;
  std::string out;
};

int cmd_curve(const CurveArgs& args) {
  Curve curve;
  if (args.kind == "h" || args.kind == "V") {
    if (args.lhs.empty() || args.rhs.empty())
      throw validation_error("curve: kinds h and V need --lhs and --rhs");
    const System lhs = system_from_json(load_json(args.lhs));
    const System rhs = system_from_json(load_json(args.rhs));
    SweepConfig sc;
    sc.grid_size = args.grid;
    std::vector<double> xs;
    if (args.xmin && args.xmax)
      xs = log_spaced(*args.xmin, *args.xmax, args.grid);
    else
      xs = comparison_grid(lhs, rhs, sc);
    curve.x = xs;
    for (double x : xs) {
      if (args.kind == "h") {
        curve.value.push_back(quantile_compose(lhs, rhs, x));
      } else {
        const double u = args.a * x + args.b;
        curve.value.push_back(
            exp_diff(rhs.log_tail(x), u <= 0.0 ? 0.0 : lhs.log_tail(u)));
      }
    }
  } else if (args.kind == "D") {
    if (args.dist.empty()) throw validation_error("curve: kind D needs --dist");
    const Dist base = dist_from_json(load_json(args.dist));
    ParametricFamily fam = args.param == "scale" ? ParametricFamily::scale(base)
                                                 : ParametricFamily::power_exponent(base);
    std::vector<double> xs;
    if (args.xmin && args.xmax)
      xs = log_spaced(*args.xmin, *args.xmax, args.grid);
    else
      xs = sm_default_grid(fam, args.alpha, args.grid);
    curve.x = xs;
    for (double x : xs) curve.value.push_back(saunders_moran_D(fam, args.alpha, x));
  } else {
    throw validation_error("curve: --kind must be h, V or D");
  }
  if (args.out.empty() || args.out == "-") {
    write_curve_csv(std::cout, curve);
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw validation_error("cannot write '" + args.out + "'");
    write_curve_csv(out, curve);
  }
  return 0;
}

int cmd_fixtures(const std::string& suite, double tol) {
  FixtureOptions opts;
  opts.sign_tol = tol;
  const auto results = run_fixture_suite(suite, opts);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.pass) std::cout << "\n      expected: " << r.expected
                           << "\n      got:      " << r.got;
    std::cout << "\n";
  }
  std::cout << results.size() - failed << "/" << results.size() << " fixtures passed\n";
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transform-order comparison of lifetime distributions"};
  app.require_subcommand(1);

  std::string lhs, rhs, out, curves, dist;
  RunConfig rc;

  auto* compare = app.add_subcommand("compare", "decide the transform-order relation");
  compare->add_option("--lhs", lhs, "left system document")->required();
  compare->add_option("--rhs", rhs, "right system document")->required();
  compare->add_option("--out", out, "verdict document path (default stdout)");
  compare->add_option("--curves", curves, "prefix for exported curve CSVs");
  compare->add_option("--xmax", rc.x_max, "grid ceiling for heavy tails");
  compare->add_option("--grid", rc.grid_size, "x samples per sweep cell");
  compare->add_option("--tol", rc.sign_tol, "sign suppression tolerance");

  auto* classify = app.add_subcommand("classify", "variation class of a law's tail");
  classify->add_option("--dist", dist, "distribution or system document")->required();
  classify->add_option("--out", out, "output path (default stdout)");

  CurveArgs ca;
  auto* curve = app.add_subcommand("curve", "export a diagnostic curve as CSV");
  curve->add_option("--kind", ca.kind, "h, V or D")->required();
  curve->add_option("--lhs", ca.lhs, "left system document (h, V)");
  curve->add_option("--rhs", ca.rhs, "right system document (h, V)");
  curve->add_option("--a", ca.a, "V: scaling a");
  curve->add_option("--b", ca.b, "V: shift b");
  curve->add_option("--dist", ca.dist, "D: base distribution document");
  curve->add_option("--param", ca.param, "D: power or scale family");
  curve->add_option("--alpha", ca.alpha, "D: parameter value");
  double cxmin = 0.0, cxmax = 0.0;
  auto* oxmin = curve->add_option("--xmin", cxmin, "grid start");
  auto* oxmax = curve->add_option("--xmax", cxmax, "grid end");
  curve->add_option("--grid", ca.grid, "row count");
  curve->add_option("--out", ca.out, "CSV path (default stdout)");

  std::string suite = "paper";
  double fixture_tol = 1e-9;
  auto* fixtures = app.add_subcommand("fixtures", "run the bundled fixture suite");
  fixtures->add_option("--suite", suite, "paper or all");
  fixtures->add_option("--tol", fixture_tol, "sign suppression tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) return cmd_compare(lhs, rhs, out, curves, rc);
    if (classify->parsed()) return cmd_classify(dist, out);
    if (curve->parsed()) {
      if (*oxmin) ca.xmin = cxmin;
      if (*oxmax) ca.xmax = cxmax;
      return cmd_curve(ca);
    }
    if (fixtures->parsed()) return cmd_fixtures(suite, fixture_tol);
  } catch (const xorder::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
