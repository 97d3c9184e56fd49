#pragma once

#include <exception>
#include <thread>
#include <vector>

namespace seizembed {

// Run fn(begin, end) over [0, n) split into contiguous per-worker chunks.
// Chunk boundaries depend only on (n, n_threads), and results are written to
// disjoint ranges by the callers, so outputs are identical for any thread
// count. The first exception is rethrown after all workers join.
template <typename Fn>
void parallel_chunks(std::size_t n, int n_threads, Fn&& fn) {
  if (n == 0) return;
  const std::size_t workers =
      n_threads <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(n_threads), n);
  if (workers == 1) {
    fn(static_cast<std::size_t>(0), n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin < end) fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace seizembed
