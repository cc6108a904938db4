// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "risim/codebook.hpp"
#include "risim/config.hpp"
#include "risim/engine.hpp"

namespace risim {

/// Spectral-efficiency table request: eta per scheme over a range of group
/// counts at one modulation order.
struct RateTableSpec {
  int modulation_order = 2;
  int min_groups = 1;
  int max_groups = 10;
};

struct RateRow {
  int num_groups = 0;
  int ota_bpcu = 0;
  int eota_bpcu = 0;
  int rgb_bpcu = 0;
};

inline std::vector<RateRow> rate_table(const RateTableSpec& spec) {
  if (spec.min_groups < 1 || spec.max_groups < spec.min_groups)
    throw std::invalid_argument("rate table needs 1 <= min_groups <= max_groups");
  std::vector<RateRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.max_groups - spec.min_groups + 1));
  for (int g = spec.min_groups; g <= spec.max_groups; ++g)
    rows.push_back({g, spectral_efficiency(Scheme::OtaRisIm, spec.modulation_order, g),
                    spectral_efficiency(Scheme::EOtaRisIm, spec.modulation_order, g),
                    spectral_efficiency(Scheme::RgbIm, spec.modulation_order, g)});
  return rows;
}

/// A named experiment: either a Monte Carlo BER sweep bundle or a rate
/// table.
struct Preset {
  enum class Kind { BerSweep, RateTable };
  std::string name;
  Kind kind = Kind::BerSweep;
  Experiment experiment;
  RateTableSpec table;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig3", "fig4", "fig5", "fig6"};
  return names;
}

namespace detail {

/// Shared scenario: 20 m / 50 m hops, exponents 2.2 / 2.8, Rayleigh fading,
/// -30 dB reference loss, both noise floors at -130 dBm.
inline SystemConfig scenario_base(Scheme scheme, int modulation_order, int num_groups,
                                  int elements_per_group, double alpha_db) {
  SystemConfig cfg;
  cfg.scheme = scheme;
  cfg.modulation_order = modulation_order;
  cfg.num_groups = num_groups;
  cfg.elements_per_group = elements_per_group;
  cfg.constellation_kind = ConstellationKind::Psk;
  cfg.amplification = units::from_db(alpha_db);
  cfg.transmit_power_w = units::from_dbm(0.0);  // sweeps override per point
  cfg.distance_bs_ris_m = 20.0;
  cfg.distance_ris_ue_m = 50.0;
  cfg.pathloss_exponent_bs_ris = 2.2;
  cfg.pathloss_exponent_ris_ue = 2.8;
  cfg.rician_k_bs_ris = 0.0;
  cfg.rician_k_ris_ue = 0.0;
  cfg.reference_loss = units::from_db(-30.0);
  cfg.noise_power_w = units::from_dbm(-130.0);
  cfg.amp_noise_power_w = units::from_dbm(-130.0);
  return cfg;
}

inline SweepSpec power_sweep(std::string label, SystemConfig base, std::vector<double> grid_dbm) {
  SweepSpec sweep;
  sweep.label = std::move(label);
  sweep.base = std::move(base);
  sweep.variable = SweepVariable::TransmitPowerDbm;
  sweep.grid = std::move(grid_dbm);
  return sweep;
}

}  // namespace detail

/// Builds one of the named experiments.
///
/// The three BER presets equalize spectral efficiency across schemes by
/// trading modulation order against index bits:
///   fig3: 4 bpcu at N=256, G=2; each scheme at amplification 20 and 30 dB.
///   fig4: 4 bpcu at amplification 30 dB; N swept over {64, 128, 256}.
///   fig5: 5 bpcu at N=480, amplification 30 dB, M=2; the group count per
///         scheme is what equalizes the rate (4 / 3 / 16).
///   fig6: the spectral-efficiency table for G in [1, 10] at M=2.
/// Transmit-power grids cover the region where the best scheme's BER falls
/// from roughly 1e-2 to 1e-4.
inline Preset make_preset(const std::string& name) {
  Preset preset;
  preset.name = name;
  if (name == "fig6") {
    preset.kind = Preset::Kind::RateTable;
    preset.table = RateTableSpec{2, 1, 10};
    return preset;
  }
  preset.kind = Preset::Kind::BerSweep;
  Experiment& exp = preset.experiment;
  exp.name = name;
  exp.seed = 1;
  exp.output_csv = name + ".csv";
  if (name == "fig3") {
    const std::vector<double> grid{-24.0, -18.0, -12.0, -6.0, 0.0, 6.0};
    for (double alpha_db : {20.0, 30.0}) {
      const std::string tag = "_alpha" + std::to_string(static_cast<int>(alpha_db)) + "db";
      exp.sweeps.push_back(detail::power_sweep(
          "ota" + tag, detail::scenario_base(Scheme::OtaRisIm, 4, 2, 128, alpha_db), grid));
      exp.sweeps.push_back(detail::power_sweep(
          "eota" + tag, detail::scenario_base(Scheme::EOtaRisIm, 2, 2, 128, alpha_db), grid));
      exp.sweeps.push_back(detail::power_sweep(
          "rgb" + tag, detail::scenario_base(Scheme::RgbIm, 8, 2, 128, alpha_db), grid));
    }
  } else if (name == "fig4") {
    const std::vector<double> grid{-24.0, -18.0, -12.0, -6.0, 0.0, 6.0};
    for (int elements : {32, 64, 128}) {
      const std::string tag = "_n" + std::to_string(2 * elements);
      exp.sweeps.push_back(detail::power_sweep(
          "ota" + tag, detail::scenario_base(Scheme::OtaRisIm, 4, 2, elements, 30.0), grid));
      exp.sweeps.push_back(detail::power_sweep(
          "eota" + tag, detail::scenario_base(Scheme::EOtaRisIm, 2, 2, elements, 30.0), grid));
      exp.sweeps.push_back(detail::power_sweep(
          "rgb" + tag, detail::scenario_base(Scheme::RgbIm, 8, 2, elements, 30.0), grid));
    }
  } else if (name == "fig5") {
    const std::vector<double> grid{-24.0, -18.0, -12.0, -6.0, 0.0, 6.0};
    exp.sweeps.push_back(detail::power_sweep(
        "ota_g4", detail::scenario_base(Scheme::OtaRisIm, 2, 4, 120, 30.0), grid));
    exp.sweeps.push_back(detail::power_sweep(
        "eota_g3", detail::scenario_base(Scheme::EOtaRisIm, 2, 3, 160, 30.0), grid));
    exp.sweeps.push_back(detail::power_sweep(
        "rgb_g16", detail::scenario_base(Scheme::RgbIm, 2, 16, 30, 30.0), grid));
  } else {
    std::string names;
    for (const auto& n : preset_names()) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (valid: " + names + ")");
  }
  return preset;
}

}  // namespace risim
