#pragma once

#include <string>
#include <vector>

#include "xorder/sweep.hpp"

namespace xorder {

struct FixtureResult {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct FixtureOptions {
  double sign_tol = 1e-9;  // sweep sign-suppression tolerance
  Execution execution = Execution::OpenMP;
};

/// Runs the named suite ("paper" for the core claims, "all" for the core
/// claims plus derived cross-checks). Throws validation_error for unknown
/// suite names.
std::vector<FixtureResult> run_fixture_suite(const std::string& suite,
                                             const FixtureOptions& opts = {});

}  // namespace xorder
