#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tailgof {

// Runs fn(lo, hi) over a block partition of [0, n). Each block is handled by
// one thread and blocks are disjoint, so results written to per-index slots
// are independent of the worker count. The first pending exception (by block
// order) is rethrown after all threads join.
inline void parallel_blocks(int n, int workers, const std::function<void(int, int)>& fn) {
  if (n <= 0) return;
  int w = std::max(1, std::min(workers, n));
  if (w == 1) {
    fn(0, n);
    return;
  }
  int chunk = (n + w - 1) / w;
  int blocks = (n + chunk - 1) / chunk;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    int lo = b * chunk;
    int hi = std::min(n, lo + chunk);
    pool.emplace_back([&, b, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[static_cast<std::size_t>(b)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace tailgof
