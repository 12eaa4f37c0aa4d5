#pragma once

/// @file random.hpp
/// Counter-based random numbers: every draw is a pure function of
/// (seed, stream, counter), so results never depend on call order.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace nslab {

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    std::uint64_t z = mix(seed_ ^ mix(stream_ + 0x632be59bd9b4e019ULL));
    return mix(z + counter * 0x9e3779b97f4a7c15ULL);
  }
  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }
  double uniform(std::uint64_t counter, double lo, double hi) const noexcept {
    return lo + (hi - lo) * uniform(counter);
  }
  /// Standard normal by Box-Muller on draws 2c and 2c + 1.
  double normal(std::uint64_t counter) const noexcept {
    const double u1 = 1.0 - uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  CounterRng substream(std::uint64_t index) const noexcept {
    return CounterRng(seed_, mix(stream_ ^ (index + 0xd1b54a32d192ed03ULL)));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    // SplitMix64 finalizer
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace nslab
