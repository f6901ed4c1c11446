#ifndef STIF_PARALLEL_HPP
#define STIF_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace stif {

// Global worker count; 0 means hardware concurrency. Set once by the CLI.
void set_worker_count(int workers);
int worker_count();

// Splits [0, n) into fixed-size blocks, runs fn(begin, end, block_index) on a
// pool, and returns when all blocks are done. Block boundaries depend only on
// n and block_size, never on the worker count, so per-block results merged in
// block order are bit-stable for any number of workers.
void parallel_blocks(size_t n, size_t block_size,
                     const std::function<void(size_t, size_t, size_t)>& fn);

inline size_t block_count(size_t n, size_t block_size) {
  return block_size == 0 ? 0 : (n + block_size - 1) / block_size;
}

// Deterministic parallel map: out[i] = fn(i), output order fixed by index.
template <class Out>
std::vector<Out> parallel_map(size_t n, const std::function<Out(size_t)>& fn,
                              size_t block_size = 16) {
  std::vector<Out> out(n);
  parallel_blocks(n, block_size, [&](size_t b, size_t e, size_t) {
    for (size_t i = b; i < e; ++i) out[i] = fn(i);
  });
  return out;
}

}  // namespace stif

#endif  // STIF_PARALLEL_HPP
