// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "risim/bits.hpp"
#include "risim/codebook.hpp"
#include "risim/constellation.hpp"
#include "risim/link.hpp"
#include "risim/ris.hpp"

namespace risim {

/// One candidate (symbol, codeword) pair with its Euclidean metric
/// ||y - sqrt(P) x_m * effective_gain(codeword)||^2.
struct Hypothesis {
  int symbol_index = 0;    // geometric constellation index m
  int codeword_index = 0;  // codebook position
  double metric = 0.0;
};

/// Joint ML decision plus the decoded bit values and the runner-up metric
/// as a confidence diagnostic.
struct DetectionResult {
  Hypothesis best;
  double runner_up_metric = 0.0;
  std::uint64_t symbol_label = 0;  // Gray label of the decided symbol
  std::uint64_t index_value = 0;   // integer value of the decided index bits
};

/// Scratch buffer reusable across detections to avoid per-trial allocation.
struct DetectorWorkspace {
  std::vector<std::complex<double>> eff;
};

/// Exhaustive joint maximum-likelihood detection over all M * 2^index_bits
/// hypotheses, assuming the receiver knows the true group gains (perfect
/// CSI). Effective gains are evaluated once per codeword and shared by all M
/// symbol hypotheses. Strict comparison with codeword-major, symbol-minor
/// scan order makes ties resolve to the lowest (codeword, symbol) pair, so
/// results are identical on any platform and any schedule.
inline DetectionResult ml_detect(std::complex<double> y, const GroupGains& gains,
                                 const Codebook& cb, const Constellation& constellation,
                                 double transmit_power_w, DetectorWorkspace& ws) {
  const double amp = std::sqrt(transmit_power_w);
  const std::size_t cw_count = cb.size();
  ws.eff.resize(cw_count);
  for (std::size_t r = 0; r < cw_count; ++r) ws.eff[r] = effective_gain(gains, cb.codewords[r]);

  Hypothesis best{0, 0, std::numeric_limits<double>::infinity()};
  double runner_up = std::numeric_limits<double>::infinity();
  const auto& points = constellation.points();
  for (std::size_t r = 0; r < cw_count; ++r) {
    const std::complex<double> scaled = amp * ws.eff[r];
    for (std::size_t m = 0; m < points.size(); ++m) {
      const std::complex<double> residual = y - points[m] * scaled;
      const double metric = std::norm(residual);
      if (metric < best.metric) {
        runner_up = best.metric;
        best = Hypothesis{static_cast<int>(m), static_cast<int>(r), metric};
      } else if (metric < runner_up) {
        runner_up = metric;
      }
    }
  }

  DetectionResult out;
  out.best = best;
  out.runner_up_metric = runner_up;
  out.symbol_label = constellation.label_of(best.symbol_index);
  out.index_value = static_cast<std::uint64_t>(best.codeword_index);
  return out;
}

inline DetectionResult ml_detect(std::complex<double> y, const GroupGains& gains,
                                 const Codebook& cb, const Constellation& constellation,
                                 double transmit_power_w) {
  DetectorWorkspace ws;
  return ml_detect(y, gains, cb, constellation, transmit_power_w, ws);
}

/// Hamming error counts of a detection against the transmitted bit values:
/// (symbol bit errors, index bit errors).
inline std::pair<int, int> count_bit_errors(std::uint64_t sent_symbol_label,
                                            std::uint64_t sent_index_value,
                                            const DetectionResult& detected) {
  return {hamming_distance(sent_symbol_label, detected.symbol_label),
          hamming_distance(sent_index_value, detected.index_value)};
}

/// Bit-vector form, for callers that carry explicit bit vectors.
inline std::pair<int, int> count_bit_errors(std::span<const int> sent_symbol_bits,
                                            std::span<const int> sent_index_bits,
                                            const DetectionResult& detected) {
  return count_bit_errors(bits_to_value(sent_symbol_bits), bits_to_value(sent_index_bits),
                          detected);
}

}  // namespace risim
