#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ordlab {

// Worker count from ORDLAB_THREADS, or `fallback` when unset or malformed.
unsigned workers_from_env(unsigned fallback = 1);

// Runs fn(i) for i in [0, count) on up to `workers` threads and returns the
// results indexed by i. Any merge over the result vector is therefore
// independent of the worker count.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> results(count);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace ordlab
