#pragma once

// Deterministic parallel map: each index writes its own slot, so results are
// independent of thread interleaving.  Thread count comes from AXB_THREADS
// when set, else hardware_concurrency.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace axb {

inline int default_threads() {
  if (const char* env = std::getenv("AXB_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (...) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body,
                         int threads = 0) {
  if (threads <= 0) threads = default_threads();
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mtx;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mtx);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int nt = static_cast<int>(std::min<std::size_t>(threads, count));
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace axb
