#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bifurcata {

// Worker count for parallel sweeps: the hardware concurrency (at least 1),
// capped by the BIFURCATA_THREADS environment variable when set to a
// positive integer.
inline int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  int n = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("BIFURCATA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v < n) n = static_cast<int>(v);
  }
  return n;
}

// Runs fn(0..n_items-1) on up to worker_count() threads.  Results must be
// written to per-index slots so the outcome does not depend on scheduling;
// the first exception wins, stops the sweep, and is rethrown on the caller.
inline void parallel_for(int n_items, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), n_items);
  if (workers <= 1) {
    for (int i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto run = [&]() {
    try {
      for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1))
        fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!first_error) first_error = std::current_exception();
      next.store(n_items);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bifurcata
