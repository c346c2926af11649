#include "dirac/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace dirac {

int thread_budget() {
  static const int budget = [] {
    if (const char* env = std::getenv("DIRAC_LAB_THREADS")) {
      try {
        return std::max(1, std::stoi(env));
      } catch (const std::exception&) {
        // fall through to the hardware default on unparseable values
      }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return budget;
}

void parallel_for(Index count, const std::function<void(Index)>& fn) {
  if (count <= 0) return;
  const int workers = static_cast<int>(std::min<Index>(thread_budget(), count));
  if (workers == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const Index i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dirac
