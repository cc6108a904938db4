// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "risim/engine.hpp"
#include "risim/units.hpp"

namespace risim {

inline constexpr const char* kBerCsvHeader =
    "scheme,M,G,N,alpha_db,pt_dbm,trials,bit_errors,ber,ci_halfwidth,seed";

/// One line of BER output. ber and ci_halfwidth round-trip losslessly
/// (printed with 17 significant digits); the dB/dBm display values are
/// cosmetic and printed to 10.
struct BerCsvRow {
  std::string scheme;
  int modulation_order = 0;
  int num_groups = 0;
  int total_elements = 0;
  double alpha_db = 0.0;
  double pt_dbm = 0.0;
  long long trials = 0;
  long long bit_errors = 0;
  double ber = 0.0;
  double ci_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

inline BerCsvRow to_csv_row(const SweepPoint& point) {
  BerCsvRow row;
  row.scheme = scheme_name(point.config.scheme);
  row.modulation_order = point.config.modulation_order;
  row.num_groups = point.config.num_groups;
  row.total_elements = point.config.total_elements();
  row.alpha_db = units::to_db(point.config.amplification);
  row.pt_dbm = point.result.pt_dbm;
  row.trials = point.result.trials;
  row.bit_errors = point.result.bit_errors;
  row.ber = point.result.ber;
  row.ci_halfwidth = point.result.ci_halfwidth;
  row.seed = point.result.seed;
  return row;
}

inline std::string format_csv_row(const BerCsvRow& r) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%.10g,%.10g,%lld,%lld,%.17g,%.17g,%llu",
                r.scheme.c_str(), r.modulation_order, r.num_groups, r.total_elements, r.alpha_db,
                r.pt_dbm, r.trials, r.bit_errors, r.ber, r.ci_halfwidth,
                static_cast<unsigned long long>(r.seed));
  return buf;
}

inline void write_ber_csv(const std::vector<SweepPoint>& points, std::ostream& out) {
  out << kBerCsvHeader << '\n';
  for (const auto& p : points) out << format_csv_row(to_csv_row(p)) << '\n';
}

/// Parses output produced by write_ber_csv. Rejects a wrong header or a
/// malformed row; used by tests to prove the emitted CSV round-trips.
inline std::vector<BerCsvRow> read_ber_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBerCsvHeader)
    throw std::runtime_error("csv: unexpected header '" + line + "'");
  std::vector<BerCsvRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 11)
      throw std::runtime_error("csv: expected 11 fields, got " + std::to_string(fields.size()) +
                               " in '" + line + "'");
    BerCsvRow r;
    r.scheme = fields[0];
    r.modulation_order = std::stoi(fields[1]);
    r.num_groups = std::stoi(fields[2]);
    r.total_elements = std::stoi(fields[3]);
    r.alpha_db = std::strtod(fields[4].c_str(), nullptr);
    r.pt_dbm = std::strtod(fields[5].c_str(), nullptr);
    r.trials = std::stoll(fields[6]);
    r.bit_errors = std::stoll(fields[7]);
    r.ber = std::strtod(fields[8].c_str(), nullptr);
    r.ci_halfwidth = std::strtod(fields[9].c_str(), nullptr);
    r.seed = std::strtoull(fields[10].c_str(), nullptr, 10);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace risim
