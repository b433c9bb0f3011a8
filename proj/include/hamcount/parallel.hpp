#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hamcount {

// Calls body(worker, begin, end) on contiguous chunks of [0, count) using up to
// `threads` threads. Chunk boundaries depend on the thread count, so bodies must
// only write results indexed by position. The first exception is rethrown.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1U, threads);
  if (threads == 1 || count < 2) {
    if (count > 0) body(0U, std::size_t{0}, count);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  const std::size_t step = (count + workers - 1) / workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * step;
    const std::size_t end = std::min(count, begin + step);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(static_cast<unsigned>(w), begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hamcount
