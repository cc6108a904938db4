// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "risim/codebook.hpp"
#include "risim/config.hpp"
#include "risim/ris.hpp"
#include "risim/rng.hpp"

namespace risim {

/// One received baseband sample plus its noise-free part for diagnostics.
struct RxSample {
  std::complex<double> y;
  std::complex<double> signal_part;
};

/// Channel gain seen by the data symbol under a codeword: sum over groups of
/// gain_g * coherent_g, plus the unaligned sums of zero-phase groups. Real
/// for the proposed schemes; complex only when the benchmark reflects
/// unselected groups at a fixed phase.
inline std::complex<double> effective_gain(const GroupGains& gains, const StateCodeword& s) {
  double aligned = 0.0;
  std::complex<double> plain{0.0, 0.0};
  const std::size_t g_count = gains.coherent.size();
  for (std::size_t g = 0; g < g_count; ++g) {
    if (s.states[g] == GroupState::ZeroPhase)
      plain += gains.unaligned[g];
    else
      aligned += s.gain[g] * gains.coherent[g];
  }
  return plain + aligned;
}

/// True when a codeword runs at least one amplifier, i.e. when forwarded
/// amplifier noise exists at all.
inline bool has_amplified_group(const Codebook& cb, const StateCodeword& s) {
  if (!cb.active_amplified) return false;
  for (GroupState st : s.states)
    if (st == GroupState::Active) return true;
  return false;
}

/// Synthesizes the received sample y for symbol x under codeword s:
/// sqrt(P) * x * effective_gain, plus forwarded amplifier noise from every
/// amplified group, plus receiver noise CN(0, N0).
///
/// Amplifier noise is drawn once per amplified group in ascending group
/// order (the single-draw conditional form, see amplifier_noise_fast), then
/// the receiver noise; draws are skipped entirely when their variance is
/// zero, so noiseless configurations reproduce signal_part exactly. With the
/// default placement the amplifier noise adds independently of the symbol,
/// which keeps the analytic SNR below exact for any constellation; the
/// alternative placement scales it by sqrt(P) * x, distinguishable only for
/// non-unit-modulus symbols.
inline RxSample transmit(std::complex<double> x, const StateCodeword& s, const GroupGains& gains,
                         const Codebook& cb, const SystemConfig& cfg, RngStream& rng) {
  const double amp = std::sqrt(cfg.transmit_power_w);
  RxSample out;
  out.signal_part = amp * x * effective_gain(gains, s);

  std::complex<double> forwarded{0.0, 0.0};
  if (cb.active_amplified && cfg.amp_noise_power_w > 0.0) {
    const std::size_t g_count = s.states.size();
    for (std::size_t g = 0; g < g_count; ++g)
      if (s.states[g] == GroupState::Active)
        forwarded +=
            amplifier_noise_fast(static_cast<int>(g), gains, cfg.amplification,
                                 cfg.amp_noise_power_w, rng);
  }
  if (cfg.noise_placement == NoisePlacement::InsideSymbolProduct) forwarded *= amp * x;

  std::complex<double> receiver{0.0, 0.0};
  if (cfg.noise_power_w > 0.0) receiver = std::sqrt(cfg.noise_power_w) * rng.complex_normal();

  out.y = out.signal_part + forwarded + receiver;
  return out;
}

/// Post-alignment SNR of a (realization, codeword) pair:
///   P * |effective_gain|^2 / (alpha * V0 * sum over amplified groups of
///   ris_ue_energy + N0).
/// Infinite for fully noiseless configurations. Exact for the default noise
/// placement; under InsideSymbolProduct it still holds whenever |x| = 1.
inline double analytic_snr(const GroupGains& gains, const StateCodeword& s, const Codebook& cb,
                           const SystemConfig& cfg) {
  const std::complex<double> eff = effective_gain(gains, s);
  const double signal = cfg.transmit_power_w * std::norm(eff);
  double noise = cfg.noise_power_w;
  if (cb.active_amplified) {
    const std::size_t g_count = s.states.size();
    for (std::size_t g = 0; g < g_count; ++g)
      if (s.states[g] == GroupState::Active)
        noise += cfg.amplification * cfg.amp_noise_power_w * gains.ris_ue_energy[g];
  }
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return signal / noise;
}

}  // namespace risim
