#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mzm {

// Worker cap for embarrassingly parallel sweeps (curvature grids, loop
// batches). MZM_THREADS overrides; default is the hardware count.
inline int worker_count() {
  if (const char* env = std::getenv("MZM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Static block partition; deterministic regardless of worker count because
// each index writes only its own slot.
inline void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), std::max(n, 1));
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

} // namespace mzm
