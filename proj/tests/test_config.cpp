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

#include <catch_amalgamated.hpp>

#include <fstream>

#include "spatcon/config.hpp"
#include "spatcon/error.hpp"

#include "support.hpp"

using namespace spatcon;

namespace
{
    ErrorCode code_of(const std::string &text, bool strict = true)
    {
        try
        {
            read_config(text, strict);
        }
        catch (const Error &e)
        {
            return e.code();
        }
        FAIL("expected an error for:\n" << text);
        return ErrorCode::IoError;
    }
}

TEST_CASE("empty config gives the campaign defaults", "[config]")
{
    const RunConfig cfg = read_config("");
    CHECK(cfg.eval.tau == 10);
    CHECK(cfg.eval.n_subcarriers == 100);
    CHECK(cfg.eval.carrier_frequency == 3.675e9);
    CHECK(cfg.eval.subcarrier_spacing == 180e3);
    CHECK(cfg.eval.lttl_count == 120);
    CHECK(cfg.eval.stts_interval == 1.08e-3);
    CHECK(cfg.eval.lttl_interval == 0.66);
    CHECK(cfg.scenario.array.n_r() == 128);
    CHECK(cfg == RunConfig{});
}

TEST_CASE("overrides", "[config]")
{
    const RunConfig cfg = read_config(R"(
# window length sweep
[eval]
tau = 1          # single STTS
[scenario]
preset = far_away
seed = 42
[array]
n_columns = 8
radius_m = 0.2
[synth]
snr_db = 15
bs_height_m = 3
)");
    CHECK(cfg.eval.tau == 1);
    CHECK(cfg.scenario.preset == Preset::FarAway);
    CHECK(cfg.scenario.seed == 42);
    CHECK(cfg.scenario.array.n_columns == 8);
    CHECK(cfg.scenario.array.radius == 0.2);
    CHECK(cfg.scenario.synth.snr_db == 15.0);
    CHECK(cfg.scenario.synth.bs_height == 3.0);
}

TEST_CASE("auto spacing follows the carrier", "[config]")
{
    const RunConfig cfg = read_config("[eval]\ncarrier_frequency_hz = 7.35e9\n");
    CHECK(cfg.scenario.array.carrier_frequency == 7.35e9);
    CHECK(cfg.scenario.array.radius == ArrayConfig::default_radius(7.35e9, 16));
    CHECK(cfg.scenario.array.row_spacing == wavelength(7.35e9) / 2.0);
}

TEST_CASE("window longer than the LTTS interval is rejected at load", "[config]")
{
    CHECK(code_of("[eval]\nlttl_interval_s = 0.005\n") == ErrorCode::InvalidInterval);
    CHECK(code_of("[eval]\ntau = 0\n") == ErrorCode::InvalidConfig);
}

TEST_CASE("malformed text", "[config]")
{
    CHECK(code_of("[eval\n") == ErrorCode::ParseError);
    CHECK(code_of("tau = 3\n") == ErrorCode::ParseError);
    CHECK(code_of("[eval]\ntau\n") == ErrorCode::ParseError);
    CHECK(code_of("[eval]\ntau = ten\n") == ErrorCode::ParseError);
    CHECK(code_of("[eval]\ntau = -1\n") == ErrorCode::ParseError);
    CHECK(code_of("[eval]\ntau = 3\ntau = 4\n") == ErrorCode::ParseError);
    CHECK(code_of("[scenario]\npreset = diagonal\n") == ErrorCode::ParseError);
    CHECK(code_of("[array]\nn_polarizations = 3\n") == ErrorCode::InvalidConfig);
    CHECK(code_of("[thresholds]\nradial_level = 2\n") == ErrorCode::InvalidConfig);

    try
    {
        read_config("[eval]\n\n\ntau = x\n");
    }
    catch (const Error &e)
    {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("unknown keys", "[config]")
{
    CHECK(code_of("[eval]\ntaus = 3\n") == ErrorCode::UnknownKey);
    CHECK(code_of("[plotting]\ncolor = red\n") == ErrorCode::UnknownKey);
    CHECK(read_config("[eval]\ntaus = 3\n[plotting]\ncolor = red\n", false) == RunConfig{});
}

TEST_CASE("write/read round trip", "[config]")
{
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial)
    {
        RunConfig cfg;
        cfg.eval.tau = 1 + static_cast<std::size_t>(rng.uniform() * 20.0);
        cfg.eval.n_subcarriers = 1 + static_cast<std::size_t>(rng.uniform() * 300.0);
        cfg.eval.stts_interval = rng.uniform(1e-4, 2e-3);
        cfg.eval.lttl_interval = rng.uniform(0.05, 0.7);
        cfg.eval.lttl_count = 10 + static_cast<std::size_t>(rng.uniform() * 100.0);
        cfg.eval.carrier_frequency = rng.uniform(1e9, 6e9);
        cfg.scenario.preset = static_cast<Preset>(trial % 4);
        cfg.scenario.seed = static_cast<std::uint64_t>(rng.uniform() * 1e15);
        cfg.scenario.array.carrier_frequency = cfg.eval.carrier_frequency;
        cfg.scenario.array.radius = rng.uniform(0.01, 0.5);
        cfg.scenario.array.row_spacing = rng.uniform(0.01, 0.2);
        cfg.scenario.pattern.hpbw_azimuth = deg2rad(rng.uniform(10.0, 170.0));
        cfg.scenario.pattern.hpbw_elevation = deg2rad(rng.uniform(10.0, 170.0));
        cfg.scenario.synth.k_factor_db = rng.uniform(-5.0, 20.0);
        if (trial % 2)
            cfg.scenario.synth.snr_db = rng.uniform(0.0, 30.0);
        if (trial % 3 == 0)
            cfg.scenario.synth.bs_height = rng.uniform(2.0, 30.0);
        cfg.thresholds.radial_level = rng.uniform(0.3, 0.7);
        cfg.thresholds.trend_slope_min = rng.uniform(1e-3, 1e-2);

        // every value that went through the text form once must be a fixed point
        const RunConfig once = read_config(write_config(cfg));
        const RunConfig twice = read_config(write_config(once));
        CHECK(twice == once);
        CHECK(write_config(twice) == write_config(once));
        CHECK(config_digest(twice) == config_digest(once));
        CHECK(once.eval == cfg.eval);
        CHECK(once.thresholds == cfg.thresholds);
        CHECK(once.scenario.array == cfg.scenario.array);
        CHECK(once.scenario.synth == cfg.scenario.synth);
    }
}

TEST_CASE("config files", "[config]")
{
    const test::TempDir dir;
    const std::string path = dir.file("run.ini");
    RunConfig cfg;
    cfg.eval.tau = 4;
    {
        std::ofstream(path) << write_config(cfg);
    }
    CHECK(read_config_file(path) == cfg);
    try
    {
        read_config_file(dir.file("missing.ini"));
        FAIL("expected IoError");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::IoError);
    }
}

TEST_CASE("digest changes with any value", "[config]")
{
    RunConfig a, b;
    b.thresholds.flat_range_max = 0.3;
    CHECK(config_digest(a) != config_digest(b));
    CHECK(config_digest(a) == config_digest(RunConfig{}));
    CHECK(config_digest(a).size() == 16);
}
