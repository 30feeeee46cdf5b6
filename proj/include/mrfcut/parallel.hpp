#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mrfcut {

/// Runs fn(k, worker) for k in [0, count) on up to `workers` threads, where
/// worker in [0, workers) identifies the running thread (for per-thread
/// scratch). Tasks write to disjoint slots, so results do not depend on
/// scheduling. The exception of the lowest failing index is rethrown.
template <typename F>
void parallel_for(std::size_t count, int workers, F&& fn) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k, std::size_t{0});
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t worker) {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        fn(k, worker);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(threads, count); ++w) pool.emplace_back(run, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace mrfcut
