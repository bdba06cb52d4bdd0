#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace peerrank {

/// Runs fn(i) for i in [0, count) split across `threads` workers. Each index
/// must write only its own output slot; results are then identical for any
/// worker count. The first exception thrown by any worker is rethrown on the
/// calling thread after all workers finish.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(count) * w / threads);
    const int hi = static_cast<int>(static_cast<long long>(count) * (w + 1) / threads);
    pool.emplace_back([lo, hi, &fn, &error, &error_mutex] {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace peerrank
