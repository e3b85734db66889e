#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sefield {

inline unsigned default_workers() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Calls fn(i) for every i in [0, count). Work is claimed through an atomic
// counter, so the assignment of indices to threads is arbitrary; callers
// write results by index. The first exception thrown is rethrown.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn) {
  if (count == 0) return;
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// out[i] = fn(i), evaluated in parallel.
template <class Fn>
std::vector<double> parallel_map(std::uint64_t count, unsigned workers, Fn&& fn) {
  std::vector<double> out(count);
  parallel_for(count, workers, [&](std::uint64_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace sefield
