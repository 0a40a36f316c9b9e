#include "xorder/serialization.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace xorder {

namespace {

double need_number(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number())
    throw validation_error(std::string("document: missing or non-numeric field '") +
                           field + "'");
  return j[field].get<double>();
}

int need_int(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw validation_error(std::string("document: missing or non-integer field '") +
                           field + "'");
  return j[field].get<int>();
}

std::string need_string(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string())
    throw validation_error(std::string("document: missing or non-string field '") +
                           field + "'");
  return j[field].get<std::string>();
}

const char* builtin_name(BuiltinTailKind k) {
  switch (k) {
    case BuiltinTailKind::InvQuadratic: return "inv_quadratic";
    case BuiltinTailKind::InvLog: return "inv_log";
    case BuiltinTailKind::ExpLogSquared: return "exp_log_squared";
  }
  return "?";
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

json to_json(const Dist& d) {
  json j;
  j["family"] = d.family_name();
  if (const auto* e = std::get_if<Exponential>(&d.family())) {
    j["rate"] = e->rate;
  } else if (const auto* w = std::get_if<Weibull>(&d.family())) {
    j["shape"] = w->shape;
    j["scale"] = w->scale;
  } else if (const auto* g = std::get_if<GammaInt>(&d.family())) {
    j["shape"] = g->shape;
    j["rate"] = g->rate;
  } else if (const auto* g = std::get_if<GenExponential>(&d.family())) {
    j["shape"] = g->shape;
    j["rate"] = g->rate;
  } else if (const auto* u = std::get_if<UQuadratic>(&d.family())) {
    j["left"] = u->left;
    j["right"] = u->right;
  } else if (const auto* p = std::get_if<PowerOf>(&d.family())) {
    j["exponent"] = p->exponent;
    j["base"] = to_json(*p->base);
  } else if (const auto* t = std::get_if<TailPowerOf>(&d.family())) {
    j["exponent"] = t->exponent;
    j["base"] = to_json(*t->base);
  } else if (const auto* b = std::get_if<BuiltinTail>(&d.family())) {
    j["name"] = builtin_name(b->kind);
  }
  return j;
}

Dist dist_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("distribution document must be an object");
  const std::string family = need_string(j, "family");
  if (family == "exponential") return Dist::exponential(need_number(j, "rate"));
  if (family == "weibull")
    return Dist::weibull(need_number(j, "shape"), need_number(j, "scale"));
  if (family == "gamma_int")
    return Dist::gamma_int(need_int(j, "shape"), need_number(j, "rate"));
  if (family == "gen_exponential")
    return Dist::gen_exponential(need_number(j, "shape"), need_number(j, "rate"));
  if (family == "u_quadratic")
    return Dist::u_quadratic(need_number(j, "left"), need_number(j, "right"));
  if (family == "power_of") {
    if (!j.contains("base")) throw validation_error("document: missing field 'base'");
    return Dist::power_of(dist_from_json(j["base"]), need_number(j, "exponent"));
  }
  if (family == "tail_power_of") {
    if (!j.contains("base")) throw validation_error("document: missing field 'base'");
    return Dist::tail_power_of(dist_from_json(j["base"]), need_number(j, "exponent"));
  }
  if (family == "builtin_tail") return Dist::builtin_tail(need_string(j, "name"));
  throw validation_error("document: unknown family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Systems
// ---------------------------------------------------------------------------

json to_json(const System& s) {
  json j;
  switch (s.kind()) {
    case NodeKind::Component:
      j["op"] = "component";
      j["distribution"] = to_json(s.leaf());
      return j;
    case NodeKind::Max:
    case NodeKind::Min: {
      j["op"] = s.kind() == NodeKind::Max ? "max" : "min";
      json kids = json::array();
      for (const auto& c : s.children()) kids.push_back(to_json(c));
      j["components"] = std::move(kids);
      if (s.fgm()) {
        j["dependence"] = {{"type", "fgm"}, {"c", s.fgm()->coeffs}};
      } else {
        j["dependence"] = {{"type", "independent"}};
      }
      return j;
    }
  }
  throw validation_error("to_json: unknown system node");
}

System system_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("system document must be an object");
  if (j.contains("family")) return System(dist_from_json(j));  // bare distribution
  const std::string op = need_string(j, "op");
  if (op == "component") {
    if (!j.contains("distribution"))
      throw validation_error("document: missing field 'distribution'");
    return System(dist_from_json(j["distribution"]));
  }
  if (op != "max" && op != "min")
    throw validation_error("document: field 'op' must be component, max or min");
  if (!j.contains("components") || !j["components"].is_array() ||
      j["components"].empty())
    throw validation_error("document: field 'components' must be a nonempty array");
  std::vector<System> children;
  children.reserve(j["components"].size());
  for (const auto& c : j["components"]) children.push_back(system_from_json(c));

  std::string dep = "independent";
  if (j.contains("dependence")) dep = need_string(j["dependence"], "type");
  if (dep == "independent")
    return op == "max" ? System::max_of(std::move(children))
                       : System::min_of(std::move(children));
  if (dep != "fgm")
    throw validation_error("document: dependence 'type' must be independent or fgm");
  if (op != "max")
    throw validation_error("document: fgm dependence is supported only on max nodes");
  const json& cj = j["dependence"];
  if (!cj.contains("c") || !cj["c"].is_array())
    throw validation_error("document: fgm dependence needs the coefficient array 'c'");
  std::vector<double> coeffs;
  for (const auto& c : cj["c"]) {
    if (!c.is_number())
      throw validation_error("document: fgm coefficients in 'c' must be numbers");
    coeffs.push_back(c.get<double>());
  }
  return System::max_of_fgm(std::move(children), std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Verdicts and classifications
// ---------------------------------------------------------------------------

namespace {

json to_json(const PatternWitness& w) {
  return {{"a", w.a},
          {"b", w.b},
          {"pattern", w.pattern.pattern},
          {"epsilon", w.pattern.epsilon},
          {"suppressed", w.pattern.suppressed},
          {"grid", {{"lo", w.x_lo}, {"hi", w.x_hi}, {"points", w.points}, {"spacing", "log"}}}};
}

json to_json(const LimitEstimate& l) {
  const char* status = "not_converged";
  switch (l.status) {
    case LimitStatus::Converged: status = "converged"; break;
    case LimitStatus::DivergedToZero: status = "diverged_to_zero"; break;
    case LimitStatus::DivergedToInfinity: status = "diverged_to_infinity"; break;
    case LimitStatus::NotConverged: status = "not_converged"; break;
  }
  json j{{"status", status}, {"steps", l.steps}};
  j["value"] = std::isfinite(l.value) ? json(l.value) : json(nullptr);
  j["trace"] = l.trace;
  return j;
}

json to_json(const LinearAsymptote& l) {
  return {{"slope", l.slope},
          {"intercept", l.intercept},
          {"converged", l.converged},
          {"probes", l.probes},
          {"residuals", l.residuals}};
}

json to_json(const DirectionResult& d) {
  return {{"violated", d.violated},
          {"cells", d.cells},
          {"witness_count", d.witnesses.size()}};
}

}  // namespace

json to_json(const ComparisonVerdict& v) {
  json j;
  j["relation"] = relation_name(v.relation);
  j["candidate_c"] = v.candidate_c ? json(*v.candidate_c) : json(nullptr);
  j["scale_k"] = v.scale_k ? json(*v.scale_k) : json(nullptr);
  j["star_relation"] = v.star_relation ? json(relation_name(*v.star_relation)) : json(nullptr);
  json ev = json::array();
  for (const auto& e : v.evidence) {
    json je{{"kind", e.kind}, {"note", e.note}, {"values", e.values}};
    if (e.witness) je["witness"] = to_json(*e.witness);
    ev.push_back(std::move(je));
  }
  j["evidence"] = std::move(ev);
  json diag;
  if (v.tail_ratio) diag["tail_ratio"] = to_json(*v.tail_ratio);
  if (v.line) diag["asymptotic_line"] = to_json(*v.line);
  if (v.sweeps) {
    diag["sweeps"] = {{"forward", to_json(v.sweeps->forward)},
                      {"reverse", to_json(v.sweeps->reverse)},
                      {"used_star_shortcut", v.sweeps->used_star_shortcut},
                      {"star_forward_holds", v.sweeps->star_forward_holds},
                      {"star_reverse_holds", v.sweeps->star_reverse_holds}};
  }
  j["diagnostics"] = std::move(diag);
  return j;
}

json to_json(const VariationClass& c) {
  json j;
  j["class"] = variation_label_name(c.label);
  j["origin"] = c.origin == VariationOrigin::AnalyticTag ? "analytic" : "numeric";
  j["index"] = c.index ? json(*c.index) : json(nullptr);
  j["index_uncertainty"] = c.index_uncertainty ? json(*c.index_uncertainty) : json(nullptr);
  j["erpv"] = c.erpv ? json(*c.erpv) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// CSV curves
// ---------------------------------------------------------------------------

void write_curve_csv(std::ostream& os, const Curve& curve) {
  if (curve.x.size() != curve.value.size())
    throw validation_error("write_curve_csv: column length mismatch");
  os << "x,value\n";
  for (std::size_t i = 0; i < curve.x.size(); ++i)
    os << fmt17(curve.x[i]) << ',' << fmt17(curve.value[i]) << '\n';
}

Curve read_curve_csv(std::istream& is) {
  Curve out;
  std::string line;
  if (!std::getline(is, line) || line != "x,value")
    throw validation_error("read_curve_csv: missing 'x,value' header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw validation_error("read_curve_csv: malformed row '" + line + "'");
    out.x.push_back(std::stod(line.substr(0, comma)));
    out.value.push_back(std::stod(line.substr(comma + 1)));
  }
  return out;
}

}  // namespace xorder
