#pragma once

// Chunked index-range parallelism. Each index is handled exactly once by one
// thread with contiguous chunks, so per-index work that keeps its
// accumulation private is deterministic regardless of the thread count.

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace kcalc {

inline unsigned worker_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1u : hc;
}

template <class Body>
inline void parallel_for(std::size_t begin, std::size_t end, Body&& body) {
  const std::size_t count = end > begin ? end - begin : 0;
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace kcalc
