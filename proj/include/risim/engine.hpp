// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "risim/channel.hpp"
#include "risim/codebook.hpp"
#include "risim/config.hpp"
#include "risim/constellation.hpp"
#include "risim/detector.hpp"
#include "risim/link.hpp"
#include "risim/ris.hpp"
#include "risim/rng.hpp"
#include "risim/units.hpp"

namespace risim {

/// Early-stopping rule for one Monte Carlo point: stop at the first trial
/// count where at least min_errors bit errors have accumulated and at least
/// ceil(10 * min_errors / eta) trials have run, capped at max_trials.
struct Stopping {
  long long min_errors = 200;
  long long max_trials = 10'000'000;
};

/// One estimated BER point.
struct BerResult {
  double pt_dbm = 0.0;
  long long trials = 0;
  long long bit_errors = 0;
  long long symbol_bit_errors = 0;
  long long index_bit_errors = 0;
  double ber = 0.0;
  double ci_halfwidth = 0.0;  // 95% normal-approximation half-width
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

namespace detail {

/// Sparse record of one trial that produced errors. Trials are 0-based
/// internally; reported trial counts are 1-based.
struct ErrorRecord {
  long long trial;
  std::uint16_t symbol_errors;
  std::uint16_t index_errors;
};

struct TrialContext {
  const SystemConfig& cfg;
  const Codebook& cb;
  const Constellation& cons;
  std::uint64_t seed;
  std::uint64_t symbol_mask;
  std::uint64_t index_mask;
};

/// Scratch buffers reused across the trials of one worker.
struct TrialWorkspace {
  ChannelRealization real;
  GroupGains gains;
  DetectorWorkspace det;
};

/// One full transmission: fresh bits, fresh block-fading channel, one
/// received sample, joint ML detection. The per-trial RNG stream draws, in
/// order: symbol label, index value, channel realization, transmit noise.
inline std::pair<int, int> run_trial(const TrialContext& ctx, long long trial,
                                     TrialWorkspace& ws) {
  RngStream rng(derive_stream(ctx.seed, static_cast<std::uint64_t>(trial)));
  const std::uint64_t symbol_label = rng.next_u64() & ctx.symbol_mask;
  const std::uint64_t index_value = rng.next_u64() & ctx.index_mask;
  realize_into(ws.real, ctx.cfg, rng);
  group_gains_into(ws.gains, ws.real);
  const std::complex<double> x = ctx.cons.map_value(symbol_label);
  const StateCodeword& s = ctx.cb.codewords[static_cast<std::size_t>(index_value)];
  const RxSample rx = transmit(x, s, ws.gains, ctx.cb, ctx.cfg, rng);
  const DetectionResult det =
      ml_detect(rx.y, ws.gains, ctx.cb, ctx.cons, ctx.cfg.transmit_power_w, ws.det);
  return count_bit_errors(symbol_label, index_value, det);
}

}  // namespace detail

/// Estimates the BER of one configuration at one transmit power.
///
/// Trials are independent and each one owns an RNG stream derived from
/// (seed, trial index), so any parallel schedule computes identical
/// per-trial outcomes. Workers claim fixed-size chunks of the trial range;
/// the coordinator merges chunk outcomes in trial order and applies the
/// stopping rule to the merged sequence. The stopping trial therefore
/// depends only on (config, seed, stopping), never on the worker count or
/// chunk timing, which is what makes reruns byte-identical.
inline BerResult run_point(const SystemConfig& base_cfg, double pt_dbm, std::uint64_t seed,
                           const Stopping& stopping, int workers) {
  const auto t0 = std::chrono::steady_clock::now();
  SystemConfig cfg = base_cfg;
  cfg.transmit_power_w = units::from_dbm(pt_dbm);
  if (auto issues = validate(cfg); !issues.empty()) throw ConfigError(std::move(issues));
  if (stopping.min_errors < 1 || stopping.max_trials < 1)
    throw std::domain_error("stopping rule requires min_errors >= 1 and max_trials >= 1");

  const Codebook cb = build_codebook(cfg);
  const Constellation cons = Constellation::build(cfg.modulation_order, cfg.constellation_kind);
  const int eta = cons.bits_per_symbol() + cb.index_bits;
  const long long floor_trials = (10 * stopping.min_errors + eta - 1) / eta;
  const long long max_trials = stopping.max_trials;

  const detail::TrialContext ctx{
      cfg,
      cb,
      cons,
      seed,
      static_cast<std::uint64_t>(cfg.modulation_order - 1),
      (std::uint64_t{1} << cb.index_bits) - 1,
  };

  constexpr long long kChunkTrials = 512;
  const long long total_chunks = (max_trials + kChunkTrials - 1) / kChunkTrials;

  std::atomic<long long> next_chunk{0};
  std::atomic<long long> chunk_limit{total_chunks};
  std::mutex mu;
  std::condition_variable cv;
  std::map<long long, std::vector<detail::ErrorRecord>> completed;
  std::exception_ptr worker_error;

  auto worker = [&] {
    detail::TrialWorkspace ws;
    try {
      for (;;) {
        const long long c = next_chunk.fetch_add(1, std::memory_order_relaxed);
        if (c >= chunk_limit.load(std::memory_order_relaxed)) break;
        const long long begin = c * kChunkTrials;
        const long long end = std::min(max_trials, begin + kChunkTrials);
        std::vector<detail::ErrorRecord> records;
        for (long long t = begin; t < end; ++t) {
          const auto [se, ie] = detail::run_trial(ctx, t, ws);
          if (se + ie > 0)
            records.push_back({t, static_cast<std::uint16_t>(se), static_cast<std::uint16_t>(ie)});
        }
        std::lock_guard<std::mutex> lock(mu);
        completed.emplace(c, std::move(records));
        cv.notify_all();
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      worker_error = std::current_exception();
      cv.notify_all();
    }
  };

  const int thread_count = std::max(1, workers);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(thread_count));
  for (int w = 0; w < thread_count; ++w) pool.emplace_back(worker);

  // Ordered merge. stop_trial is the exact trial count T once the rule has
  // fired; -1 while errors are still short of min_errors.
  long long symbol_errors = 0;
  long long index_errors = 0;
  long long stop_trial = -1;
  for (long long k = 0; k < total_chunks; ++k) {
    std::vector<detail::ErrorRecord> records;
    {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return worker_error || completed.count(k) > 0; });
      if (worker_error) break;
      records = std::move(completed[k]);
      completed.erase(k);
    }
    for (const auto& r : records) {
      if (stop_trial >= 0 && r.trial >= stop_trial) break;
      symbol_errors += r.symbol_errors;
      index_errors += r.index_errors;
      if (stop_trial < 0 && symbol_errors + index_errors >= stopping.min_errors)
        stop_trial = std::min(std::max(r.trial + 1, floor_trials), max_trials);
    }
    const long long merged_end = std::min(max_trials, (k + 1) * kChunkTrials);
    if (stop_trial >= 0 && merged_end >= stop_trial) {
      chunk_limit.store(k + 1, std::memory_order_relaxed);
      break;
    }
  }
  if (stop_trial < 0) stop_trial = max_trials;
  // Nothing further is needed from the pool in any exit path; stop claims.
  chunk_limit.store(0, std::memory_order_relaxed);
  for (auto& th : pool) th.join();
  if (worker_error) std::rethrow_exception(worker_error);

  BerResult out;
  out.pt_dbm = pt_dbm;
  out.trials = stop_trial;
  out.symbol_bit_errors = symbol_errors;
  out.index_bit_errors = index_errors;
  out.bit_errors = symbol_errors + index_errors;
  const double total_bits = static_cast<double>(stop_trial) * eta;
  out.ber = static_cast<double>(out.bit_errors) / total_bits;
  out.ci_halfwidth = 1.96 * std::sqrt(out.ber * (1.0 - out.ber) / total_bits);
  out.seed = seed;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Which configuration field a sweep varies, and the unit its grid values
/// are written in.
enum class SweepVariable { TransmitPowerDbm, AmplificationDb, ElementsPerGroup, NumGroups };

inline const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::TransmitPowerDbm: return "transmit_power_dbm";
    case SweepVariable::AmplificationDb: return "amplification_db";
    case SweepVariable::ElementsPerGroup: return "elements_per_group";
    case SweepVariable::NumGroups: return "num_groups";
  }
  return "?";
}

/// One curve: a base configuration and a grid of values for the swept
/// variable.
struct SweepSpec {
  std::string label;
  SystemConfig base;
  SweepVariable variable = SweepVariable::TransmitPowerDbm;
  std::vector<double> grid;
  Stopping stopping;
};

/// A named bundle of sweeps sharing one master seed; one CSV row per grid
/// point across all sweeps.
struct Experiment {
  std::string name;
  std::uint64_t seed = 1;
  bool seed_set = false;  // whether the source document pinned the seed
  std::string output_csv;
  std::vector<SweepSpec> sweeps;
};

inline SystemConfig apply_sweep_value(SystemConfig cfg, SweepVariable var, double value) {
  switch (var) {
    case SweepVariable::TransmitPowerDbm:
      cfg.transmit_power_w = units::from_dbm(value);
      break;
    case SweepVariable::AmplificationDb:
      cfg.amplification = units::from_db(value);
      break;
    case SweepVariable::ElementsPerGroup:
      cfg.elements_per_group = static_cast<int>(value);
      break;
    case SweepVariable::NumGroups:
      cfg.num_groups = static_cast<int>(value);
      break;
  }
  return cfg;
}

/// One resolved grid point: the fully-applied configuration and its result.
struct SweepPoint {
  std::string label;
  SystemConfig config;
  BerResult result;
};

/// Runs every grid point of one sweep. The per-point seed depends on the
/// master seed and the grid position only, so sweeps sharing a grid reuse
/// the same random numbers point-for-point; paired curves (for example the
/// same scheme at two amplification levels) then differ only through the
/// physics, not through sampling luck.
inline std::vector<SweepPoint> run_sweep(const SweepSpec& spec, std::uint64_t master_seed,
                                         int workers,
                                         const std::function<void(const SweepPoint&)>& on_point = {}) {
  if (spec.grid.empty())
    throw std::invalid_argument("sweep '" + spec.label + "' has an empty grid");
  std::vector<SweepPoint> points;
  points.reserve(spec.grid.size());
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const double value = spec.grid[i];
    const std::uint64_t point_seed = derive_stream(master_seed, static_cast<std::uint64_t>(i));
    try {
      SystemConfig cfg = apply_sweep_value(spec.base, spec.variable, value);
      const double pt_dbm = spec.variable == SweepVariable::TransmitPowerDbm
                                ? value
                                : units::to_dbm(cfg.transmit_power_w);
      SweepPoint point{spec.label, cfg, run_point(cfg, pt_dbm, point_seed, spec.stopping, workers)};
      point.config.transmit_power_w = units::from_dbm(pt_dbm);
      if (on_point) on_point(point);
      points.push_back(std::move(point));
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep '" + spec.label + "' at " +
                               std::string(sweep_variable_name(spec.variable)) + " = " +
                               std::to_string(value) + ": " + e.what());
    }
  }
  return points;
}

/// Runs all sweeps of an experiment in order and concatenates the rows.
inline std::vector<SweepPoint> run_experiment(const Experiment& exp, int workers,
                                              const std::function<void(const SweepPoint&)>& on_point = {}) {
  std::vector<SweepPoint> all;
  for (const auto& sweep : exp.sweeps) {
    auto points = run_sweep(sweep, exp.seed, workers, on_point);
    all.insert(all.end(), std::make_move_iterator(points.begin()),
               std::make_move_iterator(points.end()));
  }
  return all;
}

}  // namespace risim
