#include "kreisslab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kreisslab {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const auto workers = static_cast<std::size_t>(std::clamp<long>(threads, 1, static_cast<long>(n)));
  std::exception_ptr first_error;
  std::size_t first_index = n;
  std::mutex error_mutex;

  auto run_one = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (i < first_index) {
        first_index = i;
        first_error = std::current_exception();
      }
    }
  };

  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

int threads_from_environment(int fallback) {
  if (const char* env = std::getenv("KREISSLAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

}  // namespace kreisslab
