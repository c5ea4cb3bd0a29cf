#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace poag {

/// Splits [0, total) into contiguous chunks, one worker per chunk. Callers
/// merge per-chunk results in chunk order so reductions stay deterministic.
inline void parallel_chunks(
    uint64_t total, int threads,
    const std::function<void(int chunk, uint64_t begin, uint64_t end)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  if (total == 0) return;
  int n_chunks = threads;
  if (static_cast<uint64_t>(n_chunks) > total)
    n_chunks = static_cast<int>(total);
  if (n_chunks == 1) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_chunks);
  for (int c = 0; c < n_chunks; ++c) {
    uint64_t begin = total * c / n_chunks;
    uint64_t end = total * (c + 1) / n_chunks;
    workers.emplace_back([&, c, begin, end] { fn(c, begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace poag
