#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace cvlab {

/// Worker count: hardware concurrency, capped by the CVLAB_THREADS
/// environment variable when it holds a positive integer.
inline unsigned worker_count() {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CVLAB_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return workers;
}

/// Runs body(begin, end, chunk_index) over [0, count) split into `workers`
/// contiguous chunks. Chunk boundaries depend only on (count, workers).
template <typename Body>
void parallel_chunks(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    body(std::size_t{0}, count, 0u);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    threads.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
}

}  // namespace cvlab
