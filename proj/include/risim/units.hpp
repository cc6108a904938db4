// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include <cmath>

namespace risim::units {

/// Decibel power ratio to linear.
inline double from_db(double value_db) { return std::pow(10.0, value_db / 10.0); }

/// Linear power ratio to decibels.
inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }

/// dBm to watts.
inline double from_dbm(double value_dbm) { return std::pow(10.0, (value_dbm - 30.0) / 10.0); }

/// Watts to dBm.
inline double to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace risim::units
