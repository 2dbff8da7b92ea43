#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace nlskdv {

/// Worker count: NLSKDV_THREADS if set, otherwise the hardware count.
inline unsigned thread_count() {
  if (const char* env = std::getenv("NLSKDV_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs body(i) for i in [0, count).  Results must be written to
/// preallocated per-index slots; the schedule is static, so output is
/// identical to the serial order.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  unsigned workers = thread_count();
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  workers = std::min<std::size_t>(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace nlskdv
