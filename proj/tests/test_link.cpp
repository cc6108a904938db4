// SPDX-License-Identifier: Apache-2.0
//
// Received-signal synthesis: effective gain composition, noise moments,
// noiseless exactness, and the closed-form SNR.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "risim/channel.hpp"
#include "risim/codebook.hpp"
#include "risim/config.hpp"
#include "risim/link.hpp"
#include "risim/ris.hpp"
#include "risim/rng.hpp"

using namespace risim;
using cplx = std::complex<double>;

namespace {

GroupGains synthetic_gains() {
  GroupGains gains;
  gains.coherent = {2.0, 3.0};
  gains.ris_ue_energy = {5.0, 7.0};
  gains.unaligned = {cplx{0.5, 0.5}, cplx{-1.0, 2.0}};
  return gains;
}

StateCodeword codeword(std::vector<GroupState> states, std::vector<double> gain, int index = 0) {
  StateCodeword cw;
  cw.states = std::move(states);
  cw.gain = std::move(gain);
  cw.index = index;
  return cw;
}

}  // namespace

TEST_CASE("effective gain combines aligned groups linearly") {
  const GroupGains gains = synthetic_gains();
  const double amp = 4.0;
  using S = GroupState;
  // active + passive: amp * 2 + 1 * 3
  const cplx both = effective_gain(gains, codeword({S::Active, S::Passive}, {amp, 1.0}));
  CHECK(both.real() == Catch::Approx(11.0).epsilon(1e-14));
  CHECK(both.imag() == 0.0);
  // absorption removes the group entirely
  const cplx absorbed = effective_gain(gains, codeword({S::Absorb, S::Passive}, {0.0, 1.0}));
  CHECK(absorbed.real() == Catch::Approx(3.0).epsilon(1e-14));
  // zero-phase groups contribute their unaligned complex sum
  const cplx mixed = effective_gain(gains, codeword({S::Active, S::ZeroPhase}, {amp, 0.0}));
  CHECK(mixed.real() == Catch::Approx(8.0 - 1.0).epsilon(1e-14));
  CHECK(mixed.imag() == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("amplified group detection honors the codebook flag") {
  Codebook cb;
  cb.active_amplified = true;
  using S = GroupState;
  CHECK(has_amplified_group(cb, codeword({S::Active, S::Passive}, {2.0, 1.0})));
  CHECK(!has_amplified_group(cb, codeword({S::Passive, S::Absorb}, {1.0, 0.0})));
  cb.active_amplified = false;
  CHECK(!has_amplified_group(cb, codeword({S::Active, S::Passive}, {1.0, 1.0})));
}

TEST_CASE("noiseless transmission is exact") {
  SystemConfig cfg;
  cfg.num_groups = 2;
  cfg.elements_per_group = 16;
  cfg.noise_power_w = 0.0;
  cfg.amp_noise_power_w = 0.0;
  RngStream rng(31);
  const ChannelRealization real = realize(cfg, rng);
  const GroupGains gains = group_gains(real);
  const Codebook cb = build_codebook(cfg);
  for (const auto& cw : cb.codewords) {
    RngStream tx_rng(99);
    const RxSample rx = transmit(cplx{0.6, -0.8}, cw, gains, cb, cfg, tx_rng);
    CHECK(rx.y == rx.signal_part);  // bitwise: no draws happen at zero variance
  }
}

TEST_CASE("receiver noise variance matches the configuration") {
  SystemConfig cfg;  // defaults: both noise sources at 1e-16 W
  cfg.num_groups = 2;
  cfg.elements_per_group = 8;
  cfg.amp_noise_power_w = 0.0;
  cfg.noise_power_w = 2e-14;
  RngStream rng(17);
  const ChannelRealization real = realize(cfg, rng);
  const GroupGains gains = group_gains(real);
  const Codebook cb = build_codebook(cfg);
  const StateCodeword& cw = cb.codewords[0];
  const int n = 40000;
  double acc = 0.0;
  RngStream tx_rng(555);
  for (int i = 0; i < n; ++i) {
    const RxSample rx = transmit(cplx{1.0, 0.0}, cw, gains, cb, cfg, tx_rng);
    acc += std::norm(rx.y - rx.signal_part);
  }
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  CHECK(acc / n / cfg.noise_power_w == Catch::Approx(1.0).margin(tol));
}

TEST_CASE("forwarded amplifier noise adds per active group") {
  SystemConfig cfg;
  cfg.num_groups = 2;
  cfg.elements_per_group = 8;
  cfg.scheme = Scheme::OtaRisIm;
  cfg.amplification = 100.0;
  cfg.noise_power_w = 0.0;
  cfg.amp_noise_power_w = 3e-15;
  RngStream rng(19);
  const ChannelRealization real = realize(cfg, rng);
  const GroupGains gains = group_gains(real);
  const Codebook cb = build_codebook(cfg);
  const StateCodeword& all_active = cb.codewords[3];
  const double expected =
      cfg.amplification * cfg.amp_noise_power_w * (gains.ris_ue_energy[0] + gains.ris_ue_energy[1]);
  const int n = 40000;
  double acc = 0.0;
  RngStream tx_rng(556);
  for (int i = 0; i < n; ++i) {
    const RxSample rx = transmit(cplx{0.0, 1.0}, all_active, gains, cb, cfg, tx_rng);
    acc += std::norm(rx.y - rx.signal_part);
  }
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  CHECK(acc / n / expected == Catch::Approx(1.0).margin(tol));

  // all-passive codeword forwards nothing: exact equality again
  RngStream quiet(557);
  const RxSample rx = transmit(cplx{1.0, 0.0}, cb.codewords[0], gains, cb, cfg, quiet);
  CHECK(rx.y == rx.signal_part);
}

TEST_CASE("unamplified benchmark forwards no amplifier noise") {
  SystemConfig cfg;
  cfg.scheme = Scheme::RgbIm;
  cfg.num_groups = 2;
  cfg.elements_per_group = 8;
  cfg.noise_power_w = 0.0;
  cfg.amp_noise_power_w = 1e-14;
  cfg.rgb_active_amplified = false;
  RngStream rng(23);
  const ChannelRealization real = realize(cfg, rng);
  const GroupGains gains = group_gains(real);
  const Codebook cb = build_codebook(cfg);
  RngStream tx_rng(558);
  const RxSample rx = transmit(cplx{1.0, 0.0}, cb.codewords[0], gains, cb, cfg, tx_rng);
  CHECK(rx.y == rx.signal_part);
}

TEST_CASE("noise placement variants differ only by the symbol scale") {
  SystemConfig cfg;
  cfg.num_groups = 1;
  cfg.elements_per_group = 8;
  cfg.scheme = Scheme::OtaRisIm;
  cfg.amplification = 100.0;
  cfg.transmit_power_w = 4.0;
  cfg.noise_power_w = 0.0;
  cfg.amp_noise_power_w = 1e-3;
  RngStream rng(29);
  const ChannelRealization real = realize(cfg, rng);
  const GroupGains gains = group_gains(real);
  const Codebook cb = build_codebook(cfg);
  const StateCodeword& active = cb.codewords[1];
  REQUIRE(active.states[0] == GroupState::Active);
  const cplx x{1.5, 2.0};  // non-unit modulus, |x|^2 = 6.25
  const double base_var = cfg.amplification * cfg.amp_noise_power_w * gains.ris_ue_energy[0];

  const int n = 40000;
  double acc_outside = 0.0;
  double acc_inside = 0.0;
  RngStream rng_a(600);
  for (int i = 0; i < n; ++i) {
    const RxSample rx = transmit(x, active, gains, cb, cfg, rng_a);
    acc_outside += std::norm(rx.y - rx.signal_part);
  }
  cfg.noise_placement = NoisePlacement::InsideSymbolProduct;
  RngStream rng_b(600);
  for (int i = 0; i < n; ++i) {
    const RxSample rx = transmit(x, active, gains, cb, cfg, rng_b);
    acc_inside += std::norm(rx.y - rx.signal_part);
  }
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  CHECK(acc_outside / n / base_var == Catch::Approx(1.0).margin(tol));
  // inside placement scales the forwarded noise by sqrt(P) * x
  const double scaled = base_var * cfg.transmit_power_w * std::norm(x);
  CHECK(acc_inside / n / scaled == Catch::Approx(1.0).margin(tol));
  // identical seeds make the two runs use the same underlying draws, so the
  // ratio is exact per sample, not just in distribution
  RngStream rng_c(601), rng_d(601);
  cfg.noise_placement = NoisePlacement::OutsideSymbolProduct;
  const RxSample out_sample = transmit(x, active, gains, cb, cfg, rng_c);
  cfg.noise_placement = NoisePlacement::InsideSymbolProduct;
  const RxSample in_sample = transmit(x, active, gains, cb, cfg, rng_d);
  const cplx expected_forwarded =
      (out_sample.y - out_sample.signal_part) * std::sqrt(cfg.transmit_power_w) * x;
  CHECK(std::abs(in_sample.y - in_sample.signal_part - expected_forwarded) <=
        1e-12 * std::abs(expected_forwarded));
}

TEST_CASE("analytic snr matches its formula") {
  const GroupGains gains = synthetic_gains();
  SystemConfig cfg;
  cfg.transmit_power_w = 2.0;
  cfg.amplification = 9.0;
  cfg.noise_power_w = 1e-3;
  cfg.amp_noise_power_w = 1e-4;
  Codebook cb;
  cb.active_amplified = true;
  using S = GroupState;
  const StateCodeword cw = codeword({S::Active, S::Passive}, {3.0, 1.0});
  // eff = 3*2 + 3 = 9; signal = 2 * 81; noise = 9 * 1e-4 * 5 + 1e-3
  const double expected = 2.0 * 81.0 / (9.0 * 1e-4 * 5.0 + 1e-3);
  CHECK(analytic_snr(gains, cw, cb, cfg) == Catch::Approx(expected).epsilon(1e-14));

  // unamplified benchmark: amplifier term absent even with an Active state
  cb.active_amplified = false;
  const double plain = 2.0 * 81.0 / 1e-3;
  CHECK(analytic_snr(gains, cw, cb, cfg) == Catch::Approx(plain).epsilon(1e-14));

  // fully noiseless: infinite
  cfg.noise_power_w = 0.0;
  cfg.amp_noise_power_w = 0.0;
  cb.active_amplified = true;
  CHECK(std::isinf(analytic_snr(gains, cw, cb, cfg)));
}

TEST_CASE("empirical snr agrees with the closed form") {
  SystemConfig cfg;
  cfg.num_groups = 2;
  cfg.elements_per_group = 16;
  cfg.scheme = Scheme::EOtaRisIm;
  cfg.modulation_order = 2;
  cfg.amplification = 1000.0;
  cfg.transmit_power_w = units::from_dbm(-10.0);
  RngStream rng(37);
  const ChannelRealization real = realize(cfg, rng);
  const GroupGains gains = group_gains(real);
  const Codebook cb = build_codebook(cfg);
  RngStream tx_rng(700);
  for (int r : {0, 1, 5}) {  // active+active, active+passive, passive+absorb
    const StateCodeword& cw = cb.codewords[static_cast<std::size_t>(r)];
    const int n = 50000;
    double noise_acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const RxSample rx = transmit(cplx{1.0, 0.0}, cw, gains, cb, cfg, tx_rng);
      noise_acc += std::norm(rx.y - rx.signal_part);
    }
    const double signal = cfg.transmit_power_w * std::norm(effective_gain(gains, cw));
    const double empirical = signal / (noise_acc / n);
    CHECK(empirical / analytic_snr(gains, cw, cb, cfg) == Catch::Approx(1.0).margin(0.02));
  }
}
