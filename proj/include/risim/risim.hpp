// SPDX-License-Identifier: Apache-2.0
//
// risim: link-level simulator for hybrid-RIS over-the-air index modulation

#pragma once

#include "risim/bits.hpp"
#include "risim/channel.hpp"
#include "risim/codebook.hpp"
#include "risim/config.hpp"
#include "risim/constellation.hpp"
#include "risim/csv.hpp"
#include "risim/detector.hpp"
#include "risim/engine.hpp"
#include "risim/io_json.hpp"
#include "risim/link.hpp"
#include "risim/presets.hpp"
#include "risim/ris.hpp"
#include "risim/rng.hpp"
#include "risim/units.hpp"
