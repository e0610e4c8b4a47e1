// SPDX-License-Identifier: Apache-2.0
//
// spatcon - spatial consistency evaluation for massive SIMO channels
// Copyright (C) 2026 The spatcon authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "spatcon/classify.hpp"
#include "spatcon/eval_config.hpp"
#include "spatcon/synth.hpp"

namespace spatcon
{
    // Every effective setting of a run.
    struct RunConfig
    {
        ScenarioParams scenario{};
        EvalConfig eval{};
        ClassThresholds thresholds{};
    };

    // Parses the INI-style configuration text:
    //
    //   # comment            (also after a value)
    //   [section]
    //   key = value
    //
    // Sections and keys:
    //   [eval]       tau, n_subcarriers, stts_interval_s, lttl_interval_s, lttl_count,
    //                carrier_frequency_hz, subcarrier_spacing_hz
    //   [scenario]   preset, seed
    //   [track]      length_m, speed_mps, tx_height_m
    //   [array]      n_columns, n_rows, n_polarizations, radius_m, row_spacing_m, xpol_leakage_db
    //   [pattern]    hpbw_azimuth_deg, hpbw_elevation_deg, front_to_back_floor
    //   [synth]      k_factor_db, amplitude_scale, snr_db, los_scatterers, nlos_density,
    //                nlos_mean_lifetime_m, bs_height_m
    //   [thresholds] uncorrelated_level, uncorrelated_within_m, radial_level, radial_at_m,
    //                tangential_end_max, flat_range_max, trend_slope_min
    //
    // radius_m, row_spacing_m and bs_height_m accept "auto"; snr_db accepts "none".
    // Missing keys keep their defaults. Throws ParseError (with line number), UnknownKey in
    // strict mode, and the validation errors of the loaded values (e.g. InvalidInterval).
    RunConfig read_config(std::string_view text, bool strict = true);
    RunConfig read_config_file(const std::string &path, bool strict = true);

    // Canonical text with every effective value; read_config(write_config(c)) == c.
    std::string write_config(const RunConfig &cfg);

    std::string config_digest(const RunConfig &cfg);

    bool operator==(const RunConfig &a, const RunConfig &b);
}
