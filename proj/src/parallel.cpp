#include "stif/parallel.hpp"

#include <algorithm>
#include <mutex>

namespace stif {

namespace {
std::atomic<int> g_workers{0};
}

void set_worker_count(int workers) { g_workers.store(workers < 0 ? 0 : workers); }

int worker_count() {
  int w = g_workers.load();
  if (w > 0) return w;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_blocks(size_t n, size_t block_size,
                     const std::function<void(size_t, size_t, size_t)>& fn) {
  if (n == 0) return;
  if (block_size == 0) block_size = 1;
  size_t blocks = block_count(n, block_size);
  int workers = std::min<size_t>(worker_count(), blocks);
  if (workers <= 1) {
    for (size_t bi = 0; bi < blocks; ++bi) {
      size_t b = bi * block_size;
      fn(b, std::min(b + block_size, n), bi);
    }
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t bi = next.fetch_add(1);
        if (bi >= blocks || failed.load()) return;
        size_t b = bi * block_size;
        try {
          fn(b, std::min(b + block_size, n), bi);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace stif
