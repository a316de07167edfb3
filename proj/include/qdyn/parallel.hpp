#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qdyn {

/// Worker count for parameter sweeps: hardware concurrency, capped by the
/// QUBIT_DYN_THREADS environment variable when set.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("QUBIT_DYN_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) {
      n = static_cast<unsigned>(cap);
    }
  }
  return n;
}

/// Runs fn(i) for i in [0, n) across a small worker pool. Each index owns
/// its slot in whatever result container the caller indexes, so output
/// order is independent of scheduling.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace qdyn
