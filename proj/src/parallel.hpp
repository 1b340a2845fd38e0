#ifndef EULERLAB_SRC_PARALLEL_HPP
#define EULERLAB_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eulerlab::detail {

/// Worker count: hardware concurrency capped by EULERLAB_THREADS.
inline int thread_budget() {
  static const int budget = [] {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("EULERLAB_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1) n = std::min(n, cap);
    }
    return n;
  }();
  return budget;
}

/// Chunked parallel loop over [0, n).  `body(i)` must write only to slot i of
/// preallocated output, so assembly stays deterministic regardless of the
/// execution order.  The first exception wins and is rethrown.
template <typename Body>
void parallel_for(std::size_t n, const Body& body) {
  const int workers = std::min<std::size_t>(thread_budget(), n ? n : 1);
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace eulerlab::detail

#endif
