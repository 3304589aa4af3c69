#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace ttc {

/// Runs fn(begin, end) over a static partition of [0, n). threads <= 1 runs
/// inline on the calling thread.
template <typename Fn>
void parallel_for(int64_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    fn(int64_t(0), n);
    return;
  }
  const int workers = int(std::min<int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int64_t begin = n * w / workers;
    const int64_t end = n * (w + 1) / workers;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ttc
