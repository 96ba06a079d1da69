#pragma once

#include <cstddef>
#include <vector>

#include <omp.h>

namespace gcrit {

/// Selects the OpenMP kernel or its serial reference. Both produce bitwise
/// identical results: work is partitioned but every reduction keeps the
/// serial summation order.
enum class Execution { serial, parallel };

/// out[i] = f(i) for i in [0, n). Iterations must be independent.
template <class F>
auto map_indices(std::size_t n, F&& f, Execution exec) {
  using T = decltype(f(std::size_t{}));
  std::vector<T> out(n);
  if (exec == Execution::parallel && n > 1) {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

inline int worker_count() { return omp_get_max_threads(); }

}  // namespace gcrit
