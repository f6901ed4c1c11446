#ifndef STIF_RNG_HPP
#define STIF_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace stif {

// Seeded RNG with fully specified derived draws. std::mt19937_64's output
// sequence is pinned by the standard, but uniform_int_distribution and
// std::shuffle are not, so sampling and shuffling are implemented here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Unbiased integer in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t threshold = (~uint64_t{0} - n + 1) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, pool), in draw order.
  std::vector<size_t> sample_without_replacement(size_t pool, size_t k);

 private:
  std::mt19937_64 gen_;
};

}  // namespace stif

#endif  // STIF_RNG_HPP
