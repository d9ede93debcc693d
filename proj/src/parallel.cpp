#include "fracrd/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fracrd {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) {
  if (n == 0) n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  g_threads.store(n);
}

unsigned thread_count() { return g_threads.load(); }

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const unsigned t = g_threads.load();
  if (t <= 1 || count < 2) {
    if (count > 0) fn(0, count);
    return;
  }
  const std::size_t nchunk = std::min<std::size_t>(t, count);
  const std::size_t per = (count + nchunk - 1) / nchunk;

  // First exception wins; the rest are joined and dropped.
  std::exception_ptr error;
  std::mutex error_mutex;
  auto guarded = [&](std::size_t b, std::size_t e) {
    try {
      fn(b, e);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  std::vector<std::thread> workers;
  workers.reserve(nchunk - 1);
  for (std::size_t c = 1; c < nchunk; ++c) {
    const std::size_t b = c * per;
    const std::size_t e = std::min(count, b + per);
    if (b >= e) break;
    workers.emplace_back(guarded, b, e);
  }
  guarded(0, std::min(count, per));
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fracrd
