#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace patree {

// Runs fn(r) for r in [0, count) across `threads` workers.  fn must write only
// its own result slot; callers merge in replica-index order afterward, so the
// output is independent of scheduling.  The first exception (by completion
// order) is rethrown after all workers join.
template <class Fn>
void parallel_replicas(std::uint64_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t r = 0; r < count; ++r) fn(r);
    return;
  }
  if (threads > count) threads = static_cast<unsigned>(count);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t r = next.fetch_add(1);
        if (r >= count || failed.load()) return;
        try {
          fn(r);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

inline unsigned default_thread_count() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace patree
