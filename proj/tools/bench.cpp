// Serial-vs-OpenMP timing of the sweep kernels. The two paths must produce
// identical results (tests assert that); this target reports the speedup.

#include <chrono>
#include <cstdio>

#include "xorder/config.hpp"
#include "xorder/orders.hpp"

using namespace xorder;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

System exp_parallel(std::initializer_list<double> rates) {
  std::vector<System> parts;
  for (double r : rates) parts.emplace_back(Dist::exponential(r));
  return System::max_of(std::move(parts));
}

struct Timing {
  double serial_ms = 0.0;
  double parallel_ms = 0.0;
};

template <class F>
Timing time_both(F&& run) {
  Timing t;
  auto t0 = clock_type::now();
  run(Execution::Serial);
  t.serial_ms = ms_since(t0);
  t0 = clock_type::now();
  run(Execution::OpenMP);
  t.parallel_ms = ms_since(t0);
  return t;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", thread_cap());
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");

  const System x = exp_parallel({1.0, 2.0, 3.0});
  const System y = exp_parallel({1.5, 2.5});
  const System wx(Dist::power_of(Dist::weibull(2.0, 1.0), 3.0));
  const System wy(Dist::power_of(Dist::weibull(2.0, 1.0), 2.0));

  {
    SweepConfig cfg;
    const Timing t = time_both([&](Execution e) {
      SweepConfig c = cfg;
      c.execution = e;
      (void)star_order_test(wx, wy, c);
    });
    std::printf("%-28s %12.1f %12.1f %8.2fx\n", "star sweep (weibull maxima)",
                t.serial_ms, t.parallel_ms, t.serial_ms / t.parallel_ms);
  }
  {
    SweepConfig cfg;
    cfg.a_points = 32;
    cfg.b_points = 17;
    const Timing t = time_both([&](Execution e) {
      SweepConfig c = cfg;
      c.execution = e;
      (void)convex_order_test(x, y, c, false);
    });
    std::printf("%-28s %12.1f %12.1f %8.2fx\n", "convex sweep (exp parallel)",
                t.serial_ms, t.parallel_ms, t.serial_ms / t.parallel_ms);
  }
  return 0;
}
