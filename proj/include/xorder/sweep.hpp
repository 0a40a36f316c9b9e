#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace xorder {

/// Execution policy for data-parallel kernels. Serial is the reference
/// implementation; the OpenMP path must produce bit-identical output.
enum class Execution { Serial, OpenMP };

namespace detail {
/// Runs body(i) for i in [0, n). Iterations must be independent and write
/// only to per-index slots. The first exception from any iteration is
/// rethrown after the loop completes.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  Execution exec);
}  // namespace detail

/// Deterministic indexed map: results are merged by index, so the output
/// never depends on the execution policy or thread count.
template <class R>
std::vector<R> indexed_map(std::size_t n, const std::function<R(std::size_t)>& fn,
                           Execution exec) {
  std::vector<R> out(n);
  detail::parallel_for(n, [&](std::size_t i) { out[i] = fn(i); }, exec);
  return out;
}

}  // namespace xorder
