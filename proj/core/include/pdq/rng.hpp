// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace pdq {

// Uniform double in [0, 1) built from the top 53 bits of the engine output.
// Used instead of std::uniform_real_distribution because the standard leaves
// that distribution's algorithm unspecified; this mapping is identical on
// every platform, which keeps seeded runs bitwise reproducible.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Decorrelated engine seed for stream number `stream` of a base seed
// (splitmix64 step), so sweeps can hand every run its own engine.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace pdq
