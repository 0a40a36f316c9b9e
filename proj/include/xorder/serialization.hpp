#pragma once

#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "xorder/asymptotics.hpp"
#include "xorder/system.hpp"

namespace xorder {

using json = nlohmann::json;

// Document schemas live in schemas/*.schema.json; these functions are the
// only readers/writers, so field names stay in one place.

json to_json(const Dist& d);
Dist dist_from_json(const json& j);

json to_json(const System& s);
/// Accepts a system document, or a bare distribution document which is
/// wrapped as a single component.
System system_from_json(const json& j);

json to_json(const ComparisonVerdict& v);
json to_json(const VariationClass& c);

// Curve CSV: header "x,value", one row per grid point, every float printed
// with 17 significant digits so runs reproduce byte-for-byte.
struct Curve {
  std::vector<double> x;
  std::vector<double> value;
};

void write_curve_csv(std::ostream& os, const Curve& curve);
Curve read_curve_csv(std::istream& is);

}  // namespace xorder
