#include "montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace xorder::testsupport {

namespace {

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw; avoids distribution-object implementation drift.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double sample_system(const System& s, std::mt19937_64& rng) {
  switch (s.kind()) {
    case NodeKind::Component:
      return s.leaf().quantile(uniform01(rng));
    case NodeKind::Max: {
      double v = 0.0;
      for (const auto& c : s.children()) v = std::max(v, sample_system(c, rng));
      return v;
    }
    case NodeKind::Min: {
      double v = inf;
      for (const auto& c : s.children()) v = std::min(v, sample_system(c, rng));
      return v;
    }
  }
  return quiet_nan;
}

}  // namespace

double mc_cdf_sup_distance(const System& s, std::size_t n, std::uint64_t seed) {
  if (s.fgm()) throw config_error("mc oracle supports independent systems only");
  std::vector<double> samples(n);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) samples[i] = sample_system(s, rng);
  std::sort(samples.begin(), samples.end());
  double sup = 0.0;
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double F = s.cdf(samples[i]);
    sup = std::max(sup, std::fabs(static_cast<double>(i + 1) / dn - F));
    sup = std::max(sup, std::fabs(static_cast<double>(i) / dn - F));
  }
  return sup;
}

}  // namespace xorder::testsupport
