// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation
//
// Command-line front end. Exit codes: 0 success, 1 runtime failure
// (unwritable output, worker crash), 2 configuration failure (bad flags,
// unreadable/invalid config, unknown preset).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "risim/risim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

void print_error(const std::string& message) { std::cerr << "risim: error: " << message << "\n"; }

/// Config-class failure: every issue on its own greppable line.
int fail_config(const std::vector<std::string>& issues) {
  for (const auto& issue : issues) print_error(issue);
  return kExitConfig;
}

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Seed priority: --seed flag, then the config document, then RIS_IM_SEED,
/// then 1.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                           const risim::Experiment& exp) {
  if (flag_seed) return *flag_seed;
  if (exp.seed_set) return exp.seed;
  if (const char* env = std::getenv("RIS_IM_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw risim::ConfigError({std::string("RIS_IM_SEED: not an unsigned integer: '") + env + "'"});
  }
  return 1;
}

risim::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw risim::ConfigError({"cannot read config file '" + path + "'"});
  try {
    return risim::json::parse(in);
  } catch (const risim::json::parse_error& e) {
    throw risim::ConfigError({"config file '" + path + "': " + e.what()});
  }
}

void write_rate_table_csv(const risim::RateTableSpec& spec, std::ostream& out) {
  out << "num_groups,ota_bpcu,eota_bpcu,rgb_bpcu\n";
  for (const auto& row : risim::rate_table(spec))
    out << row.num_groups << ',' << row.ota_bpcu << ',' << row.eota_bpcu << ',' << row.rgb_bpcu
        << '\n';
}

void write_codebook_csv(const risim::Codebook& cb, std::ostream& out) {
  out << "bits,index";
  for (int g = 1; g <= cb.num_groups; ++g) out << ",group_" << g;
  out << '\n';
  for (const auto& cw : cb.codewords) {
    for (int b : risim::demap_codeword(cb, cw.index)) out << b;
    out << ',' << cw.index;
    for (const auto state : cw.states) out << ',' << risim::group_state_name(state);
    out << '\n';
  }
}

std::string point_summary(const risim::SweepPoint& p) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-16s pt=%+7.2f dBm  ber=%.3e  ci=%.1e  errors=%lld  trials=%lld  %.1fs",
                p.label.c_str(), p.result.pt_dbm, p.result.ber, p.result.ci_halfwidth,
                p.result.bit_errors, p.result.trials, p.result.wall_seconds);
  return buf;
}

struct RunOptions {
  std::string config_path;
  std::string output_path;
  std::optional<std::uint64_t> seed;
  int workers = default_workers();
  std::optional<long long> max_trials;
  std::optional<long long> min_errors;
};

int cmd_run(const RunOptions& opt) {
  risim::Preset preset = risim::preset_from_json(load_json_file(opt.config_path));

  if (preset.kind == risim::Preset::Kind::RateTable) {
    if (opt.output_path.empty()) {
      write_rate_table_csv(preset.table, std::cout);
    } else {
      std::ofstream out(opt.output_path);
      if (!out) {
        print_error("cannot write '" + opt.output_path + "'");
        return kExitRuntime;
      }
      write_rate_table_csv(preset.table, out);
      std::cout << "wrote rate table to " << opt.output_path << "\n";
    }
    return kExitOk;
  }

  risim::Experiment& exp = preset.experiment;
  exp.seed = resolve_seed(opt.seed, exp);
  for (auto& sweep : exp.sweeps) {
    if (opt.max_trials) sweep.stopping.max_trials = *opt.max_trials;
    if (opt.min_errors) sweep.stopping.min_errors = *opt.min_errors;
  }

  // Validate every resolved grid point up front so misconfiguration is a
  // clean config failure before any work starts.
  std::vector<std::string> issues;
  for (const auto& sweep : exp.sweeps)
    for (double value : sweep.grid)
      for (const auto& issue :
           risim::validate(risim::apply_sweep_value(sweep.base, sweep.variable, value)))
        issues.push_back("sweep '" + sweep.label + "': " + issue);
  if (!issues.empty()) return fail_config(issues);

  const std::string out_path = opt.output_path.empty() ? exp.output_csv : opt.output_path;
  std::ofstream out(out_path);
  if (!out) {
    print_error("cannot write '" + out_path + "'");
    return kExitRuntime;
  }

  const auto points = risim::run_experiment(exp, opt.workers, [](const risim::SweepPoint& p) {
    std::cout << point_summary(p) << std::endl;
  });
  risim::write_ber_csv(points, out);
  if (!out) {
    print_error("failed while writing '" + out_path + "'");
    return kExitRuntime;
  }
  std::cout << "wrote " << points.size() << " rows to " << out_path << " (seed " << exp.seed
            << ")\n";
  return kExitOk;
}

int cmd_preset(const std::string& name, std::string output_path) {
  const risim::Preset preset = risim::make_preset(name);
  if (output_path.empty()) output_path = name + ".json";
  std::ofstream out(output_path);
  if (!out) {
    print_error("cannot write '" + output_path + "'");
    return kExitRuntime;
  }
  out << risim::preset_to_json(preset).dump(2) << '\n';
  std::cout << "wrote preset " << name << " to " << output_path << "\n";
  return kExitOk;
}

int cmd_codebook(const std::string& scheme_name, int num_groups, double alpha_db) {
  const risim::Scheme scheme = risim::scheme_from_name(scheme_name);
  const double alpha = risim::units::from_db(alpha_db);
  risim::Codebook cb;
  switch (scheme) {
    case risim::Scheme::OtaRisIm: cb = risim::ota_codebook(num_groups, alpha); break;
    case risim::Scheme::EOtaRisIm: cb = risim::eota_codebook(num_groups, alpha); break;
    case risim::Scheme::RgbIm: {
      const risim::SystemConfig defaults;
      cb = risim::rgb_codebook(num_groups, alpha, defaults.rgb_inactive_mode,
                               defaults.rgb_active_amplified);
      break;
    }
  }
  write_codebook_csv(cb, std::cout);
  return kExitOk;
}

int cmd_rate_table(int modulation_order, int min_groups, int max_groups,
                   const std::string& output_path) {
  const risim::RateTableSpec spec{modulation_order, min_groups, max_groups};
  if (output_path.empty()) {
    write_rate_table_csv(spec, std::cout);
    return kExitOk;
  }
  std::ofstream out(output_path);
  if (!out) {
    print_error("cannot write '" + output_path + "'");
    return kExitRuntime;
  }
  write_rate_table_csv(spec, out);
  std::cout << "wrote rate table to " << output_path << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  const risim::json doc = load_json_file(config_path);
  std::vector<std::string> issues;
  if (doc.is_object() && (doc.contains("sweeps") || doc.contains("type"))) {
    const risim::Preset preset = risim::preset_from_json(doc);
    if (preset.kind == risim::Preset::Kind::RateTable) {
      risim::rate_table(preset.table);  // throws on bad bounds
    } else {
      for (const auto& sweep : preset.experiment.sweeps)
        for (double value : sweep.grid)
          for (const auto& issue :
               risim::validate(risim::apply_sweep_value(sweep.base, sweep.variable, value)))
            issues.push_back("sweep '" + sweep.label + "': " + issue);
    }
  } else {
    issues = risim::validate(risim::config_from_json(doc));
  }
  if (!issues.empty()) return fail_config(issues);
  std::cout << "ok\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level BER simulator for hybrid-RIS over-the-air index modulation"};
  app.require_subcommand(1);

  RunOptions run_opt;
  std::uint64_t seed_value = 0;
  auto* run = app.add_subcommand("run", "Run a BER sweep (or rate table) from a JSON config");
  run->add_option("--config", run_opt.config_path, "JSON experiment file")->required();
  auto* seed_opt = run->add_option("--seed", seed_value, "Master seed (overrides config and env)");
  run->add_option("--workers", run_opt.workers, "Worker thread count");
  long long max_trials_value = 0;
  long long min_errors_value = 0;
  auto* max_trials_opt =
      run->add_option("--max-trials", max_trials_value, "Override max trials per point");
  auto* min_errors_opt =
      run->add_option("--min-errors", min_errors_value, "Override early-stop error target");
  run->add_option("--output", run_opt.output_path, "Output CSV path (default from config)");

  std::string preset_name;
  std::string preset_output;
  auto* preset = app.add_subcommand("preset", "Write a named experiment as editable JSON");
  preset->add_option("name", preset_name, "One of: fig3, fig4, fig5, fig6")->required();
  preset->add_option("--output", preset_output, "Output path (default <name>.json)");

  std::string cb_scheme;
  int cb_groups = 2;
  double cb_alpha_db = 30.0;
  auto* codebook = app.add_subcommand("codebook", "Print a codeword table as CSV");
  codebook->add_option("scheme", cb_scheme, "ota, eota, or rgb")->required();
  codebook->add_option("groups", cb_groups, "Number of RIS groups")->required();
  codebook->add_option("alpha_db", cb_alpha_db, "Amplification in dB (default 30)");

  int rt_modulation = 2;
  int rt_min_groups = 1;
  int rt_max_groups = 10;
  std::string rt_output;
  auto* rate = app.add_subcommand("rate-table", "Print bits-per-channel-use by group count");
  rate->add_option("--modulation-order", rt_modulation, "Constellation size (default 2)");
  rate->add_option("--min-groups", rt_min_groups, "Smallest group count (default 1)");
  rate->add_option("--max-groups", rt_max_groups, "Largest group count (default 10)");
  rate->add_option("--output", rt_output, "Output path (default stdout)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a JSON config and report every issue");
  validate->add_option("--config", validate_path, "JSON config or experiment file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(e.what());
    return kExitConfig;
  }

  if (seed_opt->count() > 0) run_opt.seed = seed_value;
  if (max_trials_opt->count() > 0) run_opt.max_trials = max_trials_value;
  if (min_errors_opt->count() > 0) run_opt.min_errors = min_errors_value;

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (preset->parsed()) return cmd_preset(preset_name, preset_output);
    if (codebook->parsed()) return cmd_codebook(cb_scheme, cb_groups, cb_alpha_db);
    if (rate->parsed()) return cmd_rate_table(rt_modulation, rt_min_groups, rt_max_groups, rt_output);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const risim::ConfigError& e) {
    return fail_config(e.issues());
  } catch (const std::invalid_argument& e) {
    print_error(e.what());
    return kExitConfig;
  } catch (const std::domain_error& e) {
    print_error(e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    print_error(e.what());
    return kExitRuntime;
  }
  return kExitOk;
}
