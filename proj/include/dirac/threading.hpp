#pragma once

// Deterministic parallel helpers.  Work items are indexed; results are
// stored (and later reduced) in index order, so the outputs are identical
// for any thread count.  DIRAC_LAB_THREADS caps the pool.

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "dirac/types.hpp"

namespace dirac {

// DIRAC_LAB_THREADS if set (clamped to >= 1), else hardware concurrency.
int thread_budget();

void parallel_for(Index count, const std::function<void(Index)>& fn);

template <typename T>
std::vector<T> parallel_map(Index count, const std::function<T(Index)>& fn) {
  std::vector<T> results(static_cast<std::size_t>(count));
  parallel_for(count, [&](Index i) { results[static_cast<std::size_t>(i)] = fn(i); });
  return results;
}

}  // namespace dirac
