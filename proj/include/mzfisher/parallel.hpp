#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace mzfisher {

/// Runs body(i) for i in [0, count) across a few worker threads. Each index
/// is independent; callers make results schedule-independent by writing to
/// index i only, or by reducing with an associative operation afterwards.
inline void parallel_for(int count, const std::function<void(int)>& body) {
  if (count <= 0) return;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers)) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace mzfisher
