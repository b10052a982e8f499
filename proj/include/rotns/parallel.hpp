#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rotns::parallel {

inline std::size_t& thread_count() {
  static std::size_t n = 1;
  return n;
}

inline void set_threads(std::size_t n) { thread_count() = std::max<std::size_t>(1, n); }

// Splits [0, n) into one contiguous chunk per worker. Each index is owned by
// exactly one worker, so results written per-index are identical for any
// thread count; reductions must be done per-chunk and merged in chunk order.
template <class F>
void for_range(std::size_t n, F&& body) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr err;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &body, &err] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        if (!err) err = std::current_exception();  // benign race: keep one
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace rotns::parallel
