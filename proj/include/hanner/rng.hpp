// Counter-based 64-bit generator.
//
// Output k of stream s under seed z is
//   mix(key + (k + 1) * 0x9E3779B97F4A7C15),  key = mix(z ^ mix(s + 0x9E3779B97F4A7C15)),
// where mix is the SplitMix64 finalizer
//   x ^= x >> 30; x *= 0xBF58476D1CE4E5B9; x ^= x >> 27; x *= 0x94D049BB133111EB; x ^= x >> 31.
// Only integer arithmetic is involved, so streams replicate bit for bit on
// every platform and in every language with wrapping 64-bit multiply.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hanner {

class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + kGolden))) {}

  /// Output at an arbitrary position, independent of the generator state.
  constexpr std::uint64_t at(std::uint64_t counter) const {
    return mix(key_ + (counter + 1) * kGolden);
  }

  constexpr std::uint64_t next() { return at(counter_++); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// lo * (hi / lo)^u with u uniform.
  double log_uniform(double lo, double hi) {
    return std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
  }

  double phase() { return uniform(0.0, 2.0 * std::numbers::pi); }

  /// Uniform integer in [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }

  bool bernoulli(double prob) { return uniform() < prob; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hanner
