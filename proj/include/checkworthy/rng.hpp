#ifndef CHECKWORTHY_RNG_HPP_
#define CHECKWORTHY_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace checkworthy {

// Seeded generator with platform-independent derived draws.
//
// std::mt19937_64's raw output sequence is fixed by the standard, but the
// standard distributions and std::shuffle are not, so every derived quantity
// here is computed by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace checkworthy

#endif  // CHECKWORTHY_RNG_HPP_
