// Deterministic fork-join over an index range. Callers write results by
// index and reduce in index order, so output never depends on the number of
// workers.
#ifndef QHPAIR_PARALLEL_HPP
#define QHPAIR_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace qhpair {

namespace detail {
inline std::atomic<int>& job_count() {
  static std::atomic<int> jobs{static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))};
  return jobs;
}
}  // namespace detail

inline void set_jobs(int jobs) { detail::job_count() = std::max(1, jobs); }
inline int jobs() { return detail::job_count(); }

/// Runs fn(i) for i in [0, n) on up to jobs() workers, in contiguous chunks.
/// The first exception (lowest chunk) is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> tasks;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t lo = 0; lo < n; lo += chunk) {
    const std::size_t hi = std::min(n, lo + chunk);
    tasks.push_back(std::async(std::launch::async, [&fn, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    }));
  }
  for (auto& t : tasks) t.wait();
  for (auto& t : tasks) t.get();
}

/// Maps fn over [0, n) and returns the results in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace qhpair

#endif  // QHPAIR_PARALLEL_HPP
