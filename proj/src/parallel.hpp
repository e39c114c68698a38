#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace hugperch::detail {

// Runs fn(i) for i in [0, count). Work is strided across threads; callers
// write results into per-index slots so the outcome never depends on
// scheduling.
template <typename Fn>
void for_each_index(int count, bool parallel, Fn&& fn) {
  if (!parallel || count < 2) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int hw = std::max(2, static_cast<int>(std::thread::hardware_concurrency()));
  const int workers = std::min(count, hw);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, w, workers, count] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
}

}  // namespace hugperch::detail
