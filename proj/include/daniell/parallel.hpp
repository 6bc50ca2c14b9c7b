#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace daniell {

/// Runs n independent trials and collects their results in index order.
/// Trials must be pure in the trial index (each derives its own RNG from
/// the index), so the OpenMP path returns exactly what the serial reference
/// returns; tests compare the two.
template <class R>
std::vector<R> run_trials(std::int64_t n, const std::function<R(std::int64_t)>& trial,
                          bool parallel = true) {
  std::vector<R> out(static_cast<std::size_t>(n));
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = trial(i);
    return out;
  }
#else
  (void)parallel;
#endif
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = trial(i);
  return out;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace daniell
