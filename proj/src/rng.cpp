#include "stif/rng.hpp"

#include <numeric>
#include <unordered_map>

namespace stif {

std::vector<size_t> Rng::sample_without_replacement(size_t pool, size_t k) {
  if (k > pool) k = pool;
  // Partial Fisher-Yates over a sparse view of [0, pool).
  std::unordered_map<size_t, size_t> moved;
  std::vector<size_t> out;
  out.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + static_cast<size_t>(below(pool - i));
    size_t vi = moved.count(i) ? moved[i] : i;
    size_t vj = moved.count(j) ? moved[j] : j;
    out.push_back(vj);
    moved[j] = vi;
  }
  return out;
}

}  // namespace stif
