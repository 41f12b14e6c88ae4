#include "gme/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gme {

namespace {
std::atomic<int> g_override{-1};
}

int worker_count() {
  int o = g_override.load();
  if (o > 0) return o;
  int n = 0;
  if (const char* env = std::getenv("GME_THREADS")) n = std::atoi(env);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

void set_worker_count(int n) { g_override = n; }

void parallel_for(long n, const std::function<void(long)>& fn) {
  const int w = static_cast<int>(std::min<long>(worker_count(), n));
  if (w <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (long i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace gme
