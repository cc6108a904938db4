// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "risim/config.hpp"
#include "risim/rng.hpp"

namespace risim {

/// One block-fading draw of the two cascaded links. Entries carry the
/// large-scale path loss, so E[|h_gi|^2] = l_h and E[|f_gi|^2] = l_f.
/// Matrices are row-major with group as the row index.
struct ChannelRealization {
  int num_groups = 0;
  int elements_per_group = 0;
  std::vector<std::complex<double>> bs_ris;  // h_gi, BS to element (g, i)
  std::vector<std::complex<double>> ris_ue;  // f_gi, element (g, i) to UE
  double l_h = 0.0;
  double l_f = 0.0;

  std::size_t idx(int g, int i) const {
    return static_cast<std::size_t>(g) * static_cast<std::size_t>(elements_per_group) +
           static_cast<std::size_t>(i);
  }
  std::complex<double> h(int g, int i) const { return bs_ris[idx(g, i)]; }
  std::complex<double> f(int g, int i) const { return ris_ue[idx(g, i)]; }
};

/// Distance power law ref_gain * d^(-exponent), with a 1 m reference
/// distance. Inputs closer than the reference are rejected rather than
/// extrapolated into gains above ref_gain.
inline double path_loss(double ref_gain, double distance_m, double exponent) {
  if (!(distance_m >= 1.0)) throw std::domain_error("path_loss: distance below 1 m reference");
  return ref_gain * std::pow(distance_m, -exponent);
}

/// Rician fading coefficient with E[|h|^2] = 1: sqrt(K/(K+1)) * a +
/// sqrt(1/(K+1)) * b with a, b independent CN(0, 1). The line-of-sight part
/// is itself Gaussian, not deterministic, so the envelope stays Rayleigh for
/// every K; this mirrors the channel model being simulated and is
/// intentional. K = 0 short-circuits to a single draw with the identical
/// distribution.
inline std::complex<double> sample_rician(double k_factor, RngStream& rng) {
  if (k_factor == 0.0) return rng.complex_normal();
  const std::complex<double> los = rng.complex_normal();
  const std::complex<double> nlos = rng.complex_normal();
  const double c = 1.0 / (k_factor + 1.0);
  return std::sqrt(k_factor * c) * los + std::sqrt(c) * nlos;
}

/// Draws a full realization: all h entries in (g, i) row-major order, then
/// all f entries. The fill order is part of the reproducibility contract.
/// Reuses the buffers of `real`, so per-trial callers allocate only once.
inline void realize_into(ChannelRealization& real, const SystemConfig& cfg, RngStream& rng) {
  real.num_groups = cfg.num_groups;
  real.elements_per_group = cfg.elements_per_group;
  real.l_h = path_loss(cfg.reference_loss, cfg.distance_bs_ris_m, cfg.pathloss_exponent_bs_ris);
  real.l_f = path_loss(cfg.reference_loss, cfg.distance_ris_ue_m, cfg.pathloss_exponent_ris_ue);
  const std::size_t n = static_cast<std::size_t>(cfg.total_elements());
  real.bs_ris.resize(n);
  real.ris_ue.resize(n);
  const double amp_h = std::sqrt(real.l_h);
  const double amp_f = std::sqrt(real.l_f);
  for (std::size_t k = 0; k < n; ++k) real.bs_ris[k] = amp_h * sample_rician(cfg.rician_k_bs_ris, rng);
  for (std::size_t k = 0; k < n; ++k) real.ris_ue[k] = amp_f * sample_rician(cfg.rician_k_ris_ue, rng);
}

inline ChannelRealization realize(const SystemConfig& cfg, RngStream& rng) {
  ChannelRealization real;
  realize_into(real, cfg, rng);
  return real;
}

/// Debug dump: one row per element with both link coefficients.
inline void write_csv(const ChannelRealization& real, std::ostream& out) {
  out << "group,element,re_h,im_h,re_f,im_f\n";
  char line[160];
  for (int g = 0; g < real.num_groups; ++g)
    for (int i = 0; i < real.elements_per_group; ++i) {
      const auto h = real.h(g, i);
      const auto f = real.f(g, i);
      std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", g + 1, i + 1, h.real(),
                    h.imag(), f.real(), f.imag());
      out << line;
    }
}

}  // namespace risim
