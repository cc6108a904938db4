// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "risim/bits.hpp"
#include "risim/config.hpp"

namespace risim {

/// Operating state of one RIS group for one codeword. ZeroPhase is the
/// benchmark's non-selected-group behavior when it reflects without phase
/// alignment; the proposed schemes never use it.
enum class GroupState : std::uint8_t { Active, Passive, Absorb, ZeroPhase };

inline const char* group_state_name(GroupState s) {
  switch (s) {
    case GroupState::Active: return "active";
    case GroupState::Passive: return "passive";
    case GroupState::Absorb: return "absorption";
    case GroupState::ZeroPhase: return "zero_phase";
  }
  return "?";
}

/// One index-modulation codeword: the per-group amplitude applied to the
/// coherent group gain, plus the semantic state behind it. Amplitudes are
/// sqrt(alpha) for amplified groups, 1 for passive reflection, 0 for
/// absorption. ZeroPhase groups also carry amplitude 0 here because their
/// contribution is not proportional to the coherent gain; the link layer
/// adds their unaligned term separately.
struct StateCodeword {
  std::vector<double> gain;
  std::vector<GroupState> states;
  int index = 0;  // position in the codebook
};

/// Ordered codeword set for one scheme. Codeword i encodes the index-bit
/// vector whose MSB-first integer value is i.
struct Codebook {
  Scheme scheme = Scheme::OtaRisIm;
  int num_groups = 0;
  int index_bits = 0;
  double alpha = 1.0;           // linear amplification of active groups
  bool active_amplified = true; // false only for the benchmark's unamplified variant
  std::vector<StateCodeword> codewords;

  std::size_t size() const { return codewords.size(); }
};

/// 3^g without floating point; g <= 40 fits in 64 bits.
inline std::uint64_t pow3(int g) {
  if (g < 0 || g > 40) throw std::domain_error("pow3: exponent out of supported range [0, 40]");
  std::uint64_t v = 1;
  for (int k = 0; k < g; ++k) v *= 3;
  return v;
}

/// Index bits carried per channel use by each scheme, in exact integer
/// arithmetic: G, floor(log2 3^G), and floor(log2 G) respectively.
inline int index_bit_count(Scheme scheme, int num_groups) {
  if (num_groups < 1) throw std::domain_error("index_bit_count: num_groups must be >= 1");
  switch (scheme) {
    case Scheme::OtaRisIm: return num_groups;
    case Scheme::EOtaRisIm: return log2_exact(pow3(num_groups));
    // floor(log2 G); zero at G = 1, where the benchmark carries no index
    // bits and cannot actually be simulated (rgb_codebook enforces G >= 2).
    case Scheme::RgbIm: return log2_exact(static_cast<std::uint64_t>(num_groups));
  }
  throw std::domain_error("index_bit_count: unknown scheme");
}

/// Total bits per channel use: log2(M) symbol bits plus the index bits.
inline int spectral_efficiency(Scheme scheme, int modulation_order, int num_groups) {
  if (!is_power_of_two(modulation_order) || modulation_order < 2)
    throw std::domain_error("spectral_efficiency: modulation order must be a power of two >= 2");
  return log2_exact(static_cast<std::uint64_t>(modulation_order)) +
         index_bit_count(scheme, num_groups);
}

namespace detail {
// Codebooks are materialized in memory; 2^24 codewords is already far past
// any simulable configuration.
inline void check_codebook_size(int index_bits) {
  if (index_bits > 24)
    throw std::domain_error("codebook with 2^" + std::to_string(index_bits) +
                            " codewords is too large to materialize");
}
}  // namespace detail

/// Binary active/passive codebook: bit g of the codeword index (MSB = group
/// 1) selects active (sqrt(alpha)) versus passive (1) for group g.
inline Codebook ota_codebook(int num_groups, double alpha) {
  if (num_groups < 1) throw std::domain_error("ota_codebook: num_groups must be >= 1");
  detail::check_codebook_size(num_groups);
  Codebook cb;
  cb.scheme = Scheme::OtaRisIm;
  cb.num_groups = num_groups;
  cb.index_bits = num_groups;
  cb.alpha = alpha;
  const double amp = std::sqrt(alpha);
  const std::uint64_t count = std::uint64_t{1} << num_groups;
  cb.codewords.reserve(count);
  for (std::uint64_t v = 0; v < count; ++v) {
    StateCodeword cw;
    cw.index = static_cast<int>(v);
    cw.gain.resize(static_cast<std::size_t>(num_groups));
    cw.states.resize(static_cast<std::size_t>(num_groups));
    for (int g = 0; g < num_groups; ++g) {
      const bool active = ((v >> (num_groups - 1 - g)) & 1) != 0;
      cw.states[static_cast<std::size_t>(g)] = active ? GroupState::Active : GroupState::Passive;
      cw.gain[static_cast<std::size_t>(g)] = active ? amp : 1.0;
    }
    cb.codewords.push_back(std::move(cw));
  }
  return cb;
}

/// Ternary codebook truncated to a power of two: all 3^G state vectors in
/// lexicographic order with digit values active=0, passive=1, absorption=2
/// and group 1 as the most significant trit; the first 2^floor(log2 3^G)
/// vectors are kept. The all-absorption vector is the lexicographically last
/// one and is always cut (2^w < 3^G because 3^G is odd), so every codeword
/// reflects some signal.
inline Codebook eota_codebook(int num_groups, double alpha) {
  if (num_groups < 1) throw std::domain_error("eota_codebook: num_groups must be >= 1");
  const int width = index_bit_count(Scheme::EOtaRisIm, num_groups);
  detail::check_codebook_size(width);
  Codebook cb;
  cb.scheme = Scheme::EOtaRisIm;
  cb.num_groups = num_groups;
  cb.index_bits = width;
  cb.alpha = alpha;
  const double amp = std::sqrt(alpha);
  const std::uint64_t count = std::uint64_t{1} << width;
  cb.codewords.reserve(count);
  for (std::uint64_t v = 0; v < count; ++v) {
    StateCodeword cw;
    cw.index = static_cast<int>(v);
    cw.gain.resize(static_cast<std::size_t>(num_groups));
    cw.states.resize(static_cast<std::size_t>(num_groups));
    std::uint64_t rem = v;
    for (int g = num_groups - 1; g >= 0; --g) {
      const auto digit = static_cast<int>(rem % 3);
      rem /= 3;
      const auto gi = static_cast<std::size_t>(g);
      switch (digit) {
        case 0:
          cw.states[gi] = GroupState::Active;
          cw.gain[gi] = amp;
          break;
        case 1:
          cw.states[gi] = GroupState::Passive;
          cw.gain[gi] = 1.0;
          break;
        default:
          cw.states[gi] = GroupState::Absorb;
          cw.gain[gi] = 0.0;
          break;
      }
    }
    cb.codewords.push_back(std::move(cw));
  }
  return cb;
}

/// Benchmark codebook: codeword k turns group k on (amplified or plain
/// reflecting per active_amplified) and leaves every other group inactive,
/// either absorbing or reflecting at zero phase. With G not a power of two,
/// trailing groups are never selected.
inline Codebook rgb_codebook(int num_groups, double alpha, RgbInactiveMode inactive_mode,
                             bool active_amplified) {
  if (num_groups < 2) throw std::domain_error("rgb_codebook: num_groups must be >= 2");
  const int width = index_bit_count(Scheme::RgbIm, num_groups);
  Codebook cb;
  cb.scheme = Scheme::RgbIm;
  cb.num_groups = num_groups;
  cb.index_bits = width;
  cb.alpha = alpha;
  cb.active_amplified = active_amplified;
  const double active_gain = active_amplified ? std::sqrt(alpha) : 1.0;
  const GroupState inactive =
      inactive_mode == RgbInactiveMode::Absorb ? GroupState::Absorb : GroupState::ZeroPhase;
  const std::uint64_t count = std::uint64_t{1} << width;
  cb.codewords.reserve(count);
  for (std::uint64_t v = 0; v < count; ++v) {
    StateCodeword cw;
    cw.index = static_cast<int>(v);
    cw.gain.assign(static_cast<std::size_t>(num_groups), 0.0);
    cw.states.assign(static_cast<std::size_t>(num_groups), inactive);
    cw.states[static_cast<std::size_t>(v)] = GroupState::Active;
    cw.gain[static_cast<std::size_t>(v)] = active_gain;
    cb.codewords.push_back(std::move(cw));
  }
  return cb;
}

/// Codebook for a validated configuration.
inline Codebook build_codebook(const SystemConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::OtaRisIm: return ota_codebook(cfg.num_groups, cfg.amplification);
    case Scheme::EOtaRisIm: return eota_codebook(cfg.num_groups, cfg.amplification);
    case Scheme::RgbIm:
      return rgb_codebook(cfg.num_groups, cfg.amplification, cfg.rgb_inactive_mode,
                          cfg.rgb_active_amplified);
  }
  throw std::domain_error("build_codebook: unknown scheme");
}

/// Codeword selected by an index-bit vector (MSB first).
inline const StateCodeword& map_index_bits(const Codebook& cb, std::span<const int> bits) {
  if (static_cast<int>(bits.size()) != cb.index_bits)
    throw std::invalid_argument("index bit vector length " + std::to_string(bits.size()) +
                                " does not match " + std::to_string(cb.index_bits) + " index bits");
  return cb.codewords[bits_to_value(bits)];
}

/// Bit vector encoded by codeword position; inverse of map_index_bits.
inline std::vector<int> demap_codeword(const Codebook& cb, int codeword_index) {
  if (codeword_index < 0 || codeword_index >= static_cast<int>(cb.size()))
    throw std::out_of_range("codeword index out of range");
  return value_to_bits(static_cast<std::uint64_t>(codeword_index), cb.index_bits);
}

}  // namespace risim
