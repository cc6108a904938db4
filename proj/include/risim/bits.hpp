// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace risim {

inline std::uint64_t gray_encode(std::uint64_t v) { return v ^ (v >> 1); }

inline std::uint64_t gray_decode(std::uint64_t g) {
  for (unsigned shift = 1; shift < 64; shift <<= 1) g ^= g >> shift;
  return g;
}

/// Bit vectors are MSB first throughout.
inline std::uint64_t bits_to_value(std::span<const int> bits) {
  std::uint64_t v = 0;
  for (int b : bits) v = (v << 1) | static_cast<std::uint64_t>(b & 1);
  return v;
}

inline std::vector<int> value_to_bits(std::uint64_t value, int width) {
  std::vector<int> bits(static_cast<std::size_t>(width));
  for (int k = 0; k < width; ++k)
    bits[static_cast<std::size_t>(k)] = static_cast<int>((value >> (width - 1 - k)) & 1);
  return bits;
}

inline int hamming_distance(std::uint64_t a, std::uint64_t b) { return std::popcount(a ^ b); }

inline bool is_power_of_two(int v) {
  return v > 0 && std::has_single_bit(static_cast<unsigned>(v));
}

/// log2 of an exact power of two.
inline int log2_exact(std::uint64_t v) { return std::bit_width(v) - 1; }

}  // namespace risim
