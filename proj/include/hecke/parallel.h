#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hecke {

// Runs body(begin, end) over [0, count) split into fixed-size chunks.
// Chunk boundaries do not depend on the thread count, so any per-item
// results written by body are identical for every `threads` value.
template <class Body>
void parallel_chunks(std::size_t count, int threads, std::size_t chunk,
                     Body&& body) {
  if (count == 0) return;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const auto workers = static_cast<std::size_t>(
      std::clamp<long>(threads, 1, static_cast<long>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      body(c * chunk, std::min(count, (c + 1) * chunk));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
          try {
            body(c * chunk, std::min(count, (c + 1) * chunk));
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hecke
