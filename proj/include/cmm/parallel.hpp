#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cmm {

/// Worker count: CMM_THREADS if set and positive, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("CMM_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for i in [0, n) with a static contiguous partition over the
/// workers. Each index is visited exactly once, so any per-index output is
/// independent of the worker count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), (n + 255) / 256);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Fixed-size chunking for reductions: chunk boundaries depend only on n and
/// chunk, never on the worker count, so combining per-chunk partials in chunk
/// order gives bit-identical results for any CMM_THREADS.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunk, Body&& body) {
  const std::size_t chunks = (n + chunk - 1) / chunk;
  parallel_for(chunks, [&](std::size_t c) {
    body(c, c * chunk, std::min(n, (c + 1) * chunk));
  });
}

}  // namespace cmm
