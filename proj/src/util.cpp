#include "bmt/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bmt {

int thread_count() {
  if (const char* env = std::getenv("BMT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(std::min(v, 256L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {
// Nested calls run inline on the calling worker rather than oversubscribing.
thread_local bool inside_worker = false;
} // namespace

void parallel_for(long n, const std::function<void(long)>& body) {
  if (n <= 0) return;
  const long workers = std::min<long>(thread_count(), n);
  if (workers <= 1 || inside_worker) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mu;
  const auto run = [&] {
    inside_worker = true;
    for (;;) {
      const long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n || failed.load(std::memory_order_relaxed)) break;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lk(err_mu);
        if (!failed.exchange(true)) err = std::current_exception();
      }
    }
    inside_worker = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (long t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

} // namespace bmt
