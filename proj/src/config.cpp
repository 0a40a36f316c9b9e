#include "xorder/config.hpp"

#include <cstdlib>
#include <string>

#include "xorder/common.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xorder {

int thread_cap() {
  if (const char* env = std::getenv("XORDER_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // fall through to the default
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void RunConfig::validate() const {
  if (grid_size < 64) throw config_error("config: grid size must be >= 64");
  if (!(x_max > 1.0)) throw config_error("config: x_max must be > 1");
  if (!(sign_tol > 0.0)) throw config_error("config: sign tolerance must be > 0");
  if (a_points < 1 || b_points < 1) throw config_error("config: sweep sizes must be >= 1");
}

}  // namespace xorder
