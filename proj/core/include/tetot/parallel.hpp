#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tetot {

inline std::size_t default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Calls body(begin, end) on contiguous blocks of [0, count). Blocks are
/// disjoint, so results cannot depend on how the range is split. The first
/// exception thrown by any block is rethrown.
template <typename Body>
void parallel_blocks(std::size_t count, std::size_t min_block, Body&& body,
                     std::size_t threads = default_thread_count()) {
  if (count == 0) return;
  threads = std::clamp<std::size_t>(threads, 1, (count + min_block - 1) / std::max<std::size_t>(min_block, 1));
  if (threads <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(count, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back([&, t, lo, hi] {
        try {
          body(lo, hi);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tetot
