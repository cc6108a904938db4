// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "risim/config.hpp"
#include "risim/engine.hpp"
#include "risim/presets.hpp"
#include "risim/units.hpp"

namespace risim {

using json = nlohmann::json;

namespace detail {

/// dB/dBm display values are recovered from linear storage by a log, which
/// lands within an ulp of the intended figure; rounding to nano-dB makes the
/// emitted documents read as written (30, not 29.999999999999996).
inline double display_db(double db_value) { return std::round(db_value * 1e9) / 1e9; }

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError({context + ": unknown key '" + it.key() + "'"});
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError({key + ": wrong JSON type"});
  }
}

}  // namespace detail

inline Scheme scheme_from_name(const std::string& name) {
  if (name == "ota") return Scheme::OtaRisIm;
  if (name == "eota") return Scheme::EOtaRisIm;
  if (name == "rgb") return Scheme::RgbIm;
  throw ConfigError({"scheme: unknown value '" + name + "' (valid: ota, eota, rgb)"});
}

inline json config_to_json(const SystemConfig& cfg) {
  json j;
  j["scheme"] = scheme_name(cfg.scheme);
  j["num_groups"] = cfg.num_groups;
  j["elements_per_group"] = cfg.elements_per_group;
  j["modulation_order"] = cfg.modulation_order;
  j["constellation_kind"] = cfg.constellation_kind == ConstellationKind::Psk ? "psk" : "qam";
  j["amplification_db"] = detail::display_db(units::to_db(cfg.amplification));
  j["transmit_power_dbm"] = detail::display_db(units::to_dbm(cfg.transmit_power_w));
  j["distance_bs_ris_m"] = cfg.distance_bs_ris_m;
  j["distance_ris_ue_m"] = cfg.distance_ris_ue_m;
  j["pathloss_exponent_bs_ris"] = cfg.pathloss_exponent_bs_ris;
  j["pathloss_exponent_ris_ue"] = cfg.pathloss_exponent_ris_ue;
  j["rician_k_bs_ris"] = cfg.rician_k_bs_ris;
  j["rician_k_ris_ue"] = cfg.rician_k_ris_ue;
  j["reference_loss_db"] = detail::display_db(units::to_db(cfg.reference_loss));
  if (cfg.noise_power_w > 0.0)
    j["noise_power_dbm"] = detail::display_db(units::to_dbm(cfg.noise_power_w));
  else
    j["noise_power_dbm"] = nullptr;
  if (cfg.amp_noise_power_w > 0.0)
    j["amplifier_noise_power_dbm"] = detail::display_db(units::to_dbm(cfg.amp_noise_power_w));
  else
    j["amplifier_noise_power_dbm"] = nullptr;
  j["rgb_inactive_mode"] =
      cfg.rgb_inactive_mode == RgbInactiveMode::Absorb ? "absorb" : "zero_phase_reflect";
  j["rgb_active_amplified"] = cfg.rgb_active_amplified;
  j["noise_placement"] = cfg.noise_placement == NoisePlacement::InsideSymbolProduct
                             ? "inside_symbol_product"
                             : "outside_symbol_product";
  return j;
}

/// Parses a configuration object. Missing keys take the documented
/// defaults; unknown keys are rejected so unit-suffix typos cannot silently
/// change meaning; null noise powers disable that noise term.
inline SystemConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});
  static const std::set<std::string> keys{"scheme",
                                          "num_groups",
                                          "elements_per_group",
                                          "modulation_order",
                                          "constellation_kind",
                                          "amplification_db",
                                          "transmit_power_dbm",
                                          "distance_bs_ris_m",
                                          "distance_ris_ue_m",
                                          "pathloss_exponent_bs_ris",
                                          "pathloss_exponent_ris_ue",
                                          "rician_k_bs_ris",
                                          "rician_k_ris_ue",
                                          "reference_loss_db",
                                          "noise_power_dbm",
                                          "amplifier_noise_power_dbm",
                                          "rgb_inactive_mode",
                                          "rgb_active_amplified",
                                          "noise_placement"};
  detail::reject_unknown_keys(j, keys, "config");
  SystemConfig cfg;
  cfg.scheme = scheme_from_name(detail::get_or<std::string>(j, "scheme", scheme_name(cfg.scheme)));
  cfg.num_groups = detail::get_or(j, "num_groups", cfg.num_groups);
  cfg.elements_per_group = detail::get_or(j, "elements_per_group", cfg.elements_per_group);
  cfg.modulation_order = detail::get_or(j, "modulation_order", cfg.modulation_order);
  const auto kind = detail::get_or<std::string>(
      j, "constellation_kind", cfg.constellation_kind == ConstellationKind::Psk ? "psk" : "qam");
  if (kind == "psk")
    cfg.constellation_kind = ConstellationKind::Psk;
  else if (kind == "qam")
    cfg.constellation_kind = ConstellationKind::Qam;
  else
    throw ConfigError({"constellation_kind: unknown value '" + kind + "' (valid: psk, qam)"});
  cfg.amplification =
      units::from_db(detail::get_or(j, "amplification_db", units::to_db(cfg.amplification)));
  cfg.transmit_power_w =
      units::from_dbm(detail::get_or(j, "transmit_power_dbm", units::to_dbm(cfg.transmit_power_w)));
  cfg.distance_bs_ris_m = detail::get_or(j, "distance_bs_ris_m", cfg.distance_bs_ris_m);
  cfg.distance_ris_ue_m = detail::get_or(j, "distance_ris_ue_m", cfg.distance_ris_ue_m);
  cfg.pathloss_exponent_bs_ris =
      detail::get_or(j, "pathloss_exponent_bs_ris", cfg.pathloss_exponent_bs_ris);
  cfg.pathloss_exponent_ris_ue =
      detail::get_or(j, "pathloss_exponent_ris_ue", cfg.pathloss_exponent_ris_ue);
  cfg.rician_k_bs_ris = detail::get_or(j, "rician_k_bs_ris", cfg.rician_k_bs_ris);
  cfg.rician_k_ris_ue = detail::get_or(j, "rician_k_ris_ue", cfg.rician_k_ris_ue);
  cfg.reference_loss =
      units::from_db(detail::get_or(j, "reference_loss_db", units::to_db(cfg.reference_loss)));
  // Null (or explicit absence in a document that sets the key to null)
  // means the noise source is off; absence of the key keeps the default on.
  if (j.contains("noise_power_dbm") && j["noise_power_dbm"].is_null())
    cfg.noise_power_w = 0.0;
  else
    cfg.noise_power_w =
        units::from_dbm(detail::get_or(j, "noise_power_dbm", units::to_dbm(cfg.noise_power_w)));
  if (j.contains("amplifier_noise_power_dbm") && j["amplifier_noise_power_dbm"].is_null())
    cfg.amp_noise_power_w = 0.0;
  else
    cfg.amp_noise_power_w = units::from_dbm(
        detail::get_or(j, "amplifier_noise_power_dbm", units::to_dbm(cfg.amp_noise_power_w)));
  const auto mode = detail::get_or<std::string>(
      j, "rgb_inactive_mode",
      cfg.rgb_inactive_mode == RgbInactiveMode::Absorb ? "absorb" : "zero_phase_reflect");
  if (mode == "zero_phase_reflect")
    cfg.rgb_inactive_mode = RgbInactiveMode::ZeroPhaseReflect;
  else if (mode == "absorb")
    cfg.rgb_inactive_mode = RgbInactiveMode::Absorb;
  else
    throw ConfigError({"rgb_inactive_mode: unknown value '" + mode +
                       "' (valid: zero_phase_reflect, absorb)"});
  cfg.rgb_active_amplified = detail::get_or(j, "rgb_active_amplified", cfg.rgb_active_amplified);
  const auto placement = detail::get_or<std::string>(
      j, "noise_placement",
      cfg.noise_placement == NoisePlacement::InsideSymbolProduct ? "inside_symbol_product"
                                                                 : "outside_symbol_product");
  if (placement == "outside_symbol_product")
    cfg.noise_placement = NoisePlacement::OutsideSymbolProduct;
  else if (placement == "inside_symbol_product")
    cfg.noise_placement = NoisePlacement::InsideSymbolProduct;
  else
    throw ConfigError({"noise_placement: unknown value '" + placement +
                       "' (valid: outside_symbol_product, inside_symbol_product)"});
  return cfg;
}

inline json stopping_to_json(const Stopping& s) {
  return json{{"min_errors", s.min_errors}, {"max_trials", s.max_trials}};
}

inline Stopping stopping_from_json(const json& j, Stopping fallback) {
  if (!j.is_object()) throw ConfigError({"stopping: expected a JSON object"});
  detail::reject_unknown_keys(j, {"min_errors", "max_trials"}, "stopping");
  Stopping s;
  s.min_errors = detail::get_or(j, "min_errors", fallback.min_errors);
  s.max_trials = detail::get_or(j, "max_trials", fallback.max_trials);
  return s;
}

inline SweepVariable sweep_variable_from_name(const std::string& name) {
  if (name == "transmit_power_dbm") return SweepVariable::TransmitPowerDbm;
  if (name == "amplification_db") return SweepVariable::AmplificationDb;
  if (name == "elements_per_group") return SweepVariable::ElementsPerGroup;
  if (name == "num_groups") return SweepVariable::NumGroups;
  throw ConfigError({"sweep_variable: unknown value '" + name +
                     "' (valid: transmit_power_dbm, amplification_db, elements_per_group, "
                     "num_groups)"});
}

inline json experiment_to_json(const Experiment& exp) {
  json j;
  j["type"] = "ber_sweep";
  j["name"] = exp.name;
  j["seed"] = exp.seed;
  j["output_csv"] = exp.output_csv;
  json sweeps = json::array();
  for (const auto& s : exp.sweeps) {
    json sj;
    sj["label"] = s.label;
    sj["sweep_variable"] = sweep_variable_name(s.variable);
    sj["grid"] = s.grid;
    sj["stopping"] = stopping_to_json(s.stopping);
    sj["config"] = config_to_json(s.base);
    sweeps.push_back(std::move(sj));
  }
  j["sweeps"] = std::move(sweeps);
  return j;
}

inline Experiment experiment_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError({"experiment: expected a JSON object"});
  detail::reject_unknown_keys(j, {"type", "name", "seed", "output_csv", "stopping", "sweeps"},
                              "experiment");
  Experiment exp;
  exp.name = detail::get_or<std::string>(j, "name", "experiment");
  exp.seed_set = j.contains("seed") && !j["seed"].is_null();
  exp.seed = detail::get_or<std::uint64_t>(j, "seed", 1);
  exp.output_csv = detail::get_or<std::string>(j, "output_csv", exp.name + ".csv");
  Stopping defaults;
  if (j.contains("stopping")) defaults = stopping_from_json(j["stopping"], defaults);
  if (!j.contains("sweeps") || !j["sweeps"].is_array() || j["sweeps"].empty())
    throw ConfigError({"sweeps: at least one sweep is required"});
  for (const auto& sj : j["sweeps"]) {
    if (!sj.is_object()) throw ConfigError({"sweeps: each entry must be a JSON object"});
    detail::reject_unknown_keys(sj, {"label", "sweep_variable", "grid", "stopping", "config"},
                                "sweep");
    SweepSpec s;
    s.label = detail::get_or<std::string>(sj, "label", "sweep" + std::to_string(exp.sweeps.size()));
    s.variable = sweep_variable_from_name(
        detail::get_or<std::string>(sj, "sweep_variable", "transmit_power_dbm"));
    if (!sj.contains("grid") || !sj["grid"].is_array() || sj["grid"].empty())
      throw ConfigError({"sweep '" + s.label + "': grid must be a nonempty array"});
    s.grid = sj["grid"].get<std::vector<double>>();
    s.stopping = sj.contains("stopping") ? stopping_from_json(sj["stopping"], defaults) : defaults;
    s.base = config_from_json(sj.contains("config") ? sj["config"] : json::object());
    exp.sweeps.push_back(std::move(s));
  }
  return exp;
}

inline json rate_table_to_json(const RateTableSpec& spec, const std::string& name) {
  return json{{"type", "rate_table"},
              {"name", name},
              {"modulation_order", spec.modulation_order},
              {"min_groups", spec.min_groups},
              {"max_groups", spec.max_groups}};
}

inline RateTableSpec rate_table_from_json(const json& j) {
  detail::reject_unknown_keys(j, {"type", "name", "modulation_order", "min_groups", "max_groups"},
                              "rate table");
  RateTableSpec spec;
  spec.modulation_order = detail::get_or(j, "modulation_order", spec.modulation_order);
  spec.min_groups = detail::get_or(j, "min_groups", spec.min_groups);
  spec.max_groups = detail::get_or(j, "max_groups", spec.max_groups);
  return spec;
}

inline json preset_to_json(const Preset& preset) {
  if (preset.kind == Preset::Kind::RateTable)
    return rate_table_to_json(preset.table, preset.name);
  return experiment_to_json(preset.experiment);
}

/// Loads either document kind; "type" defaults to ber_sweep for plain sweep
/// files.
inline Preset preset_from_json(const json& j) {
  Preset preset;
  const auto type = detail::get_or<std::string>(j, "type", "ber_sweep");
  preset.name = detail::get_or<std::string>(j, "name", "experiment");
  if (type == "rate_table") {
    preset.kind = Preset::Kind::RateTable;
    preset.table = rate_table_from_json(j);
  } else if (type == "ber_sweep") {
    preset.kind = Preset::Kind::BerSweep;
    preset.experiment = experiment_from_json(j);
  } else {
    throw ConfigError({"type: unknown value '" + type + "' (valid: ber_sweep, rate_table)"});
  }
  return preset;
}

}  // namespace risim
