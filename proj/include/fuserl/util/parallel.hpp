#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fuserl {

inline int defaultWorkerCount() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Runs fn(i) for i in [0, n). Each index must write only to its own output
/// slot; assignment of indices to threads is unspecified, results must not
/// depend on it. Exceptions are rethrown on the calling thread.
template <typename Fn>
void parallelFor(std::size_t n, int workers, Fn&& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t threadCount = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(threadCount);
  for (std::size_t t = 0; t < threadCount; ++t) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fuserl
