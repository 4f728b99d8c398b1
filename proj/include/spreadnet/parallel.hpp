#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spreadnet {

/// Hardware concurrency, at least 1.
inline std::size_t default_jobs() noexcept {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(index, worker) for every index in [0, count) on at most `jobs`
/// threads. Indices are handed out dynamically; `worker` in [0, jobs) lets the
/// body keep worker-local scratch. Callers write results by index, so output
/// never depends on scheduling. The first exception thrown is rethrown after
/// all workers stop.
template <typename Body>
void parallel_for(std::size_t jobs, std::size_t count, Body&& body) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, std::size_t{0});
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run = [&](std::size_t worker) {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i, worker);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(jobs - 1);
    for (std::size_t w = 1; w < jobs; ++w) threads.emplace_back(run, w);
    run(0);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace spreadnet
