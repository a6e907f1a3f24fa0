#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gibbssat {

// 0 (or anything larger than the machine) means "ask the hardware".
inline unsigned resolve_thread_count(unsigned requested) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return requested == 0 ? hw : requested;
}

// Runs body(i) for i in [0, n_tasks) on n_threads workers pulling indices
// from a shared counter. Callers own determinism: results must go to
// per-index slots, never to shared accumulators.
inline void parallel_for(size_t n_tasks, unsigned n_threads,
                         const std::function<void(size_t)>& body) {
  n_threads = resolve_thread_count(n_threads);
  if (n_threads <= 1 || n_tasks <= 1) {
    for (size_t i = 0; i < n_tasks; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_tasks);  // drain remaining work
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = static_cast<unsigned>(
      std::min<size_t>(n_threads, n_tasks));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace gibbssat
