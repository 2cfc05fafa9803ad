#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace optrev {

// SplitMix64: 64-bit state, additive constant 0x9E3779B97F4A7C15, finalizer
// multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. The stream is
// bit-exact on every platform, which is what makes seeded experiments
// reproducible; <random> distributions are implementation-defined and would
// not be. Doubles take the top 53 bits; bounded integers use modulo rejection;
// Poisson uses Knuth's product method (halving recursion above mean 60, exact
// since Poisson is additive); binomial is a Bernoulli loop.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Stream `index` of a base seed; used so that parallel trials draw from
  // disjoint, order-independent streams (trial i always sees stream i).
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., bound-1}, unbiased via modulo rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 60.0) return poisson(mean * 0.5) + poisson(mean * 0.5);
    const double limit = std::exp(-mean);
    long k = 0;
    double prod = next_double();
    while (prod > limit) {
      ++k;
      prod *= next_double();
    }
    return k;
  }

  long binomial(long n, double p) {
    long hits = 0;
    for (long i = 0; i < n; ++i) hits += next_double() < p ? 1 : 0;
    return hits;
  }

  // Fisher-Yates, descending.
  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace optrev
