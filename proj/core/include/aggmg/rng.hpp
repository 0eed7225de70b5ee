// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AGGMG_RNG_HPP
#define AGGMG_RNG_HPP

#include <cstdint>

namespace aggmg {

/// Counter-based generator: the value for a (seed, counter) pair is a pure
/// function, so random streams are independent of traversal order and
/// thread count.
inline std::uint64_t hash_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t counter) {
  return hash_mix(hash_mix(seed) ^ counter);
}

/// Uniform in the open interval (0, 1).
inline double uniform_open01(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = keyed_bits(seed, counter) >> 11;  // 53 bits
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Uniform in (-1, 1), zero excluded almost surely.
inline double uniform_sym(std::uint64_t seed, std::uint64_t counter) {
  return 2.0 * uniform_open01(seed, counter) - 1.0;
}

}  // namespace aggmg

#endif
