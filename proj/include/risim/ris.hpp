// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "risim/channel.hpp"
#include "risim/rng.hpp"

namespace risim {

/// Per-group channel summaries under the ideal phase alignment that makes
/// every cascaded product h * theta * f real nonnegative.
struct GroupGains {
  /// Coherent cascaded gain per group: sum over elements of |h_gi| |f_gi|.
  std::vector<double> coherent;
  /// Sum over elements of |f_gi|^2; drives the forwarded amplifier-noise
  /// variance since |theta_gi| = 1.
  std::vector<double> ris_ue_energy;
  /// Sum over elements of h_gi * f_gi with no phase correction applied.
  /// This is what a group reflecting at a fixed zero phase contributes.
  std::vector<std::complex<double>> unaligned;
};

/// Unit-modulus reflection coefficients that cancel the cascaded phase per
/// element. Zero-magnitude products (probability zero under continuous
/// fading, but reachable in synthetic inputs) get theta = 1.
inline std::vector<std::complex<double>> align_phases(const ChannelRealization& real) {
  const std::size_t n = real.bs_ris.size();
  std::vector<std::complex<double>> theta(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> prod = real.bs_ris[k] * real.ris_ue[k];
    const double mag = std::abs(prod);
    theta[k] = (mag > 0.0) ? std::conj(prod) / mag : std::complex<double>(1.0, 0.0);
  }
  return theta;
}

inline void group_gains_into(GroupGains& gains, const ChannelRealization& real) {
  const auto g_count = static_cast<std::size_t>(real.num_groups);
  gains.coherent.assign(g_count, 0.0);
  gains.ris_ue_energy.assign(g_count, 0.0);
  gains.unaligned.assign(g_count, {0.0, 0.0});
  for (int g = 0; g < real.num_groups; ++g) {
    double coherent = 0.0;
    double energy = 0.0;
    std::complex<double> plain{0.0, 0.0};
    for (int i = 0; i < real.elements_per_group; ++i) {
      const std::complex<double> h = real.h(g, i);
      const std::complex<double> f = real.f(g, i);
      coherent += std::abs(h) * std::abs(f);
      energy += std::norm(f);
      plain += h * f;
    }
    gains.coherent[static_cast<std::size_t>(g)] = coherent;
    gains.ris_ue_energy[static_cast<std::size_t>(g)] = energy;
    gains.unaligned[static_cast<std::size_t>(g)] = plain;
  }
}

inline GroupGains group_gains(const ChannelRealization& real) {
  GroupGains gains;
  group_gains_into(gains, real);
  return gains;
}

/// Forwarded amplifier noise of one active group, element by element:
/// sqrt(alpha) * sum_i theta_gi f_gi v_gi with v_gi iid CN(0, v0).
/// Conditioned on the channel this is CN(0, alpha * v0 * sum_i |f_gi|^2).
inline std::complex<double> amplifier_noise(int g, const ChannelRealization& real,
                                            const std::vector<std::complex<double>>& theta,
                                            double alpha, double v0, RngStream& rng) {
  if (v0 == 0.0) return {0.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  const double scale = std::sqrt(v0);
  for (int i = 0; i < real.elements_per_group; ++i) {
    const std::size_t k = real.idx(g, i);
    acc += theta[k] * real.ris_ue[k] * (scale * rng.complex_normal());
  }
  return std::sqrt(alpha) * acc;
}

/// Single-draw equivalent of amplifier_noise: samples the conditional
/// distribution CN(0, alpha * v0 * ris_ue_energy[g]) directly. Exact, not an
/// approximation, because a linear combination of independent complex
/// Gaussians is complex Gaussian with the summed variance. One draw instead
/// of one per element; the hot path uses this form.
inline std::complex<double> amplifier_noise_fast(int g, const GroupGains& gains, double alpha,
                                                 double v0, RngStream& rng) {
  const double var = alpha * v0 * gains.ris_ue_energy[static_cast<std::size_t>(g)];
  if (var == 0.0) return {0.0, 0.0};
  return std::sqrt(var) * rng.complex_normal();
}

}  // namespace risim
