#include "xorder/sweep.hpp"

#include <exception>
#include <mutex>

#include "xorder/config.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xorder::detail {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  Execution exec) {
#ifdef _OPENMP
  if (exec == Execution::OpenMP && n > 1) {
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int threads = thread_cap();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace xorder::detail
