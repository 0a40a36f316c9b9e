#pragma once

#include <cstddef>

namespace xorder {

/// Thread budget for parallel kernels: the XORDER_THREADS environment
/// variable when set to a positive integer, otherwise the OpenMP default
/// (1 when built without OpenMP).
int thread_cap();

/// Command-line level knobs shared by the subcommands.
struct RunConfig {
  double x_max = 1e6;          // grid ceiling when quantiles are unreachable
  std::size_t grid_size = 4096;
  double sign_tol = 1e-9;      // near-zero suppression for sign patterns
  std::size_t a_points = 64;
  std::size_t b_points = 33;

  void validate() const;  // throws config_error on nonsense values
};

}  // namespace xorder
