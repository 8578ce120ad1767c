#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace comatroid {

/// 0 means one worker per hardware thread.
unsigned resolve_jobs(unsigned jobs);

/// Runs fn(i) for every i in [0, n) on up to `jobs` threads. Indices are
/// handed out in blocks; the first exception thrown by fn is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  constexpr std::size_t kBlock = 64;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      try {
        while (true) {
          const std::size_t begin = next.fetch_add(kBlock);
          if (begin >= n) break;
          const std::size_t end = std::min(n, begin + kBlock);
          for (std::size_t i = begin; i < end; ++i) fn(i);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace comatroid
