// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "risim/bits.hpp"
#include "risim/config.hpp"

namespace risim {

/// Gray-labeled M-ary constellation with unit average symbol energy.
///
/// Points are stored in geometric order (ring position for PSK, row-major
/// grid for QAM); the Gray label of point i is label_of(i). Fixed
/// conventions, so outputs are bit-reproducible:
///   - PSK points sit at angles 2*pi*i/M, except M=4 which is offset by
///     pi/4 (odd multiples of 45 degrees).
///   - QAM is the square grid with per-axis Gray labels, high bit half
///     selecting the in-phase level.
class Constellation {
public:
  static Constellation build(int order, ConstellationKind kind) {
    if (!is_power_of_two(order) || order < 2)
      throw std::invalid_argument("constellation order must be a power of two >= 2, got " +
                                  std::to_string(order));
    Constellation c;
    c.order_ = order;
    c.kind_ = kind;
    c.bits_per_symbol_ = log2_exact(static_cast<std::uint64_t>(order));
    if (kind == ConstellationKind::Psk) {
      c.points_.reserve(order);
      const double offset = (order == 4) ? std::numbers::pi / 4.0 : 0.0;
      for (int i = 0; i < order; ++i) {
        const double ang = offset + 2.0 * std::numbers::pi * i / order;
        c.points_.emplace_back(std::cos(ang), std::sin(ang));
      }
    } else {
      if (c.bits_per_symbol_ % 2 != 0)
        throw std::invalid_argument("QAM order must be an even power of two (4, 16, 64, ...), got " +
                                    std::to_string(order));
      const int side = 1 << (c.bits_per_symbol_ / 2);
      const double scale = std::sqrt(3.0 / (2.0 * (order - 1)));
      c.points_.reserve(order);
      for (int a = 0; a < side; ++a)
        for (int b = 0; b < side; ++b)
          c.points_.emplace_back(scale * (2 * a - side + 1), scale * (2 * b - side + 1));
    }
    return c;
  }

  int order() const { return order_; }
  int bits_per_symbol() const { return bits_per_symbol_; }
  ConstellationKind kind() const { return kind_; }
  const std::vector<std::complex<double>>& points() const { return points_; }

  /// Gray label carried by the point at geometric index i.
  std::uint64_t label_of(int point_index) const {
    check_index(point_index);
    const auto i = static_cast<std::uint64_t>(point_index);
    if (kind_ == ConstellationKind::Psk) return gray_encode(i);
    const int half = bits_per_symbol_ / 2;
    const std::uint64_t side_mask = (std::uint64_t{1} << half) - 1;
    return (gray_encode(i >> half) << half) | gray_encode(i & side_mask);
  }

  /// Geometric index of the point carrying a given Gray label.
  int index_of_label(std::uint64_t label) const {
    if (label >= static_cast<std::uint64_t>(order_))
      throw std::out_of_range("constellation label out of range");
    if (kind_ == ConstellationKind::Psk) return static_cast<int>(gray_decode(label));
    const int half = bits_per_symbol_ / 2;
    const std::uint64_t side_mask = (std::uint64_t{1} << half) - 1;
    return static_cast<int>((gray_decode(label >> half) << half) | gray_decode(label & side_mask));
  }

  /// Symbol for a label given as an integer (MSB-first packing of the bit
  /// vector). Hot-path form of map_bits.
  std::complex<double> map_value(std::uint64_t label) const {
    return points_[static_cast<std::size_t>(index_of_label(label))];
  }

  std::complex<double> map_bits(const std::vector<int>& bits) const {
    if (static_cast<int>(bits.size()) != bits_per_symbol_)
      throw std::invalid_argument(
          "bit vector length " + std::to_string(bits.size()) + " does not match " +
          std::to_string(bits_per_symbol_) + " bits per symbol");
    return map_value(bits_to_value(bits));
  }

  /// Bit vector mapped to the point at geometric index i; inverse of
  /// map_bits in the sense map_bits(demap_index(i)) == points()[i].
  std::vector<int> demap_index(int point_index) const {
    check_index(point_index);
    return value_to_bits(label_of(point_index), bits_per_symbol_);
  }

private:
  void check_index(int i) const {
    if (i < 0 || i >= order_) throw std::out_of_range("constellation point index out of range");
  }

  int order_ = 0;
  int bits_per_symbol_ = 0;
  ConstellationKind kind_ = ConstellationKind::Psk;
  std::vector<std::complex<double>> points_;
};

}  // namespace risim
