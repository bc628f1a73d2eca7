#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace apportion::detail {

// Runs task(r) for r in [0, reps) over a fixed stride per worker.
template <typename Task>
void run_parallel(std::size_t reps, unsigned threads, Task task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(reps, 1)));
  if (threads <= 1) {
    for (std::size_t r = 0; r < reps; ++r) task(r);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < reps; r += threads) task(r);
    });
  for (auto& t : pool) t.join();
}


}  // namespace apportion::detail
