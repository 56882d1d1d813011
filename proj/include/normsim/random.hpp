#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace normsim {

// Seeded 64-bit engine with platform-independent draws. The standard
// distributions are implementation-defined, so only the raw engine output
// is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::size_t index(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % b);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Fisher-Yates.
  template <typename Range>
  void shuffle(Range& r) {
    const std::size_t n = r.size();
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = index(i);
      using std::swap;
      swap(r[i - 1], r[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace normsim
