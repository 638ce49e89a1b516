#pragma once

#include <cstdint>
#include <random>

namespace kmeff {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Independent stream for sample `index` of the sub-experiment `tag`.
/// Streams depend only on (seed, tag, index), never on which worker runs them,
/// so results do not change with the worker count.
Rng derive_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

}  // namespace kmeff
