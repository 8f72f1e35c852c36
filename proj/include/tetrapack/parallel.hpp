#ifndef TETRAPACK_PARALLEL_HPP_
#define TETRAPACK_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tetrapack {

// Worker count: TETRAPACK_THREADS if set to a positive integer, else the
// hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("TETRAPACK_THREADS")) {
    try {
      long n = std::stol(env);
      if (n > 0)
        return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls f(i) for i in [0, n) on a pool of workers. The first exception
// thrown (lowest index wins) is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t err_index = n;
  std::exception_ptr err;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(run);
  for (auto& t : pool)
    t.join();
  if (err)
    std::rethrow_exception(err);
}

// Index-ordered results of f over [0, n), whatever the scheduling.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

} // namespace tetrapack

#endif // TETRAPACK_PARALLEL_HPP_
