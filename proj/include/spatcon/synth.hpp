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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spatcon/array.hpp"
#include "spatcon/digest.hpp"
#include "spatcon/eval_config.hpp"
#include "spatcon/geometry.hpp"
#include "spatcon/types.hpp"

namespace spatcon
{
    enum class Preset
    {
        LosRadial,
        LosTangential,
        FarAway,
        NlosUncorrelated
    };

    std::string_view to_string(Preset preset);
    std::optional<Preset> parse_preset(std::string_view name);

    // Single-bounce scatterer, active on [birth, death) along the track.
    struct Scatterer
    {
        Position3D position = Position3D::Zero();
        cd amplitude{1.0, 0.0};
        double birth = 0.0; // m along track
        double death = 0.0; // m along track

        bool active_at(double distance) const { return birth <= distance && distance < death; }
    };

    // Tunable knobs of the generative model.
    struct SynthParams
    {
        double k_factor_db = 10.0;          // LoS presets, at track midpoint
        double amplitude_scale = 1.0;       // global gain on every path
        std::optional<double> snr_db;       // receiver noise, off when empty
        std::size_t los_scatterers = 10;    // persistent scatterers in LoS presets
        double nlos_density = 20.0;         // expected concurrent scatterers
        double nlos_mean_lifetime = 2.0;    // m
        std::optional<double> bs_height;    // overrides the {3, 6} m draw

        bool operator==(const SynthParams &) const = default;
    };

    // Everything make_scenario needs besides preset and seed.
    struct ScenarioParams
    {
        Preset preset = Preset::LosRadial;
        std::uint64_t seed = 1;
        ArrayConfig array{};
        ElementPattern pattern{};
        double track_length = 40.0;
        double speed = 0.5;
        double tx_height = 1.5;
        SynthParams synth{};

        bool operator==(const ScenarioParams &) const = default;
    };

    struct Scenario
    {
        std::optional<Preset> preset; // empty for hand-built scenarios
        std::uint64_t seed = 0;
        BsConfig bs{};
        ArrayConfig array{};
        ElementPattern pattern{};
        Track track{};
        bool los_present = true;
        double k_factor = 10.0; // linear power ratio
        double amplitude_scale = 1.0;
        std::optional<double> snr_db;
        std::vector<Scatterer> scatterers;

        // Throws InvalidConfig / NoActivePath.
        void validate() const;

        // Canonical text form; the digest hash is taken over it.
        std::string canonical() const;
        std::uint64_t hash() const;
    };

    // Summary recorded in trace headers.
    struct ScenarioDigest
    {
        std::string hash;   // hex FNV-1a of Scenario::canonical()
        std::string preset; // empty when hand-built
        std::uint64_t seed = 0;
        bool los_present = true;
        double k_factor_db = 0.0;
        std::size_t n_scatterers = 0;
        double bs_height = 0.0;
        double min_bs_range = 0.0; // m, horizontal track segment to BS, 3D distance
        double max_bs_range = 0.0;
        double array_radius = 0.0;
        double row_spacing = 0.0;
        std::size_t n_columns = 0;
        std::size_t n_rows = 0;
        std::size_t n_polarizations = 0;
        double xpol_leakage_db = 0.0;
        double hpbw_azimuth_deg = 0.0;
        double hpbw_elevation_deg = 0.0;
        double front_to_back_floor = 0.0;
        double amplitude_scale = 1.0;
        std::optional<double> snr_db;
        std::string azimuth_convention = "counterclockwise from boresight";

        bool operator==(const ScenarioDigest &) const = default;
    };

    ScenarioDigest digest(const Scenario &scenario);

    // Closest and farthest 3D distance between the BS and the track segment.
    std::pair<double, double> bs_range_bounds(const BsConfig &bs, const Track &track);

    Scenario make_scenario(const ScenarioParams &params);
    Scenario make_scenario(Preset preset, std::uint64_t seed);

    std::vector<Scatterer> active_scatterers(const Scenario &scenario, double distance);

    struct PathSample
    {
        cd gain;          // complex amplitude, free-space decay included
        double delay;     // s
        double azimuth;   // rad, at the BS, from boresight
        double elevation; // rad
        bool los;
    };

    // Evaluates the channel as a function of transmitter position. Construction fixes the LoS
    // scaling that realizes the K-factor at the track midpoint.
    class ChannelGenerator
    {
    public:
        explicit ChannelGenerator(Scenario scenario);

        const Scenario &scenario() const { return scenario_; }
        const ArrayManifold &manifold() const { return manifold_; }
        double los_scale() const { return los_scale_; }

        std::vector<PathSample> paths(const Position3D &p, double distance) const;

        // n_r x N coefficients at one position. Throws NoActivePath.
        CMatrixXd snapshot(const Position3D &p, double distance, const EvalConfig &cfg) const;

    private:
        Scenario scenario_;
        ArrayManifold manifold_;
        double los_scale_ = 1.0;
    };

    struct TraceHeader
    {
        std::size_t n_r = 0;
        std::size_t n_subcarriers = 0;
        std::size_t stts_count = 0;
        std::size_t tau = 0;
        std::size_t lttl_count = 0;
        double stts_interval = 0.0;
        double lttl_interval = 0.0;
        double carrier_frequency = 0.0;
        double subcarrier_spacing = 0.0;
        std::vector<double> anchors; // m, one per LTTS
        ScenarioDigest scenario;
        std::string effective_config; // provenance, free text
        std::string tool{tool_version};

        EvalConfig eval_config() const;
        // Throws HeaderInconsistent.
        void validate() const;

        bool operator==(const TraceHeader &) const = default;
    };

    // Coefficients H_{t,n} of a SIMO channel, stored t-major, then subcarrier, then antenna.
    struct ChannelTrace
    {
        TraceHeader header;
        std::vector<cf> data;

        cf &at(std::size_t t, std::size_t n, std::size_t antenna)
        {
            return data[(t * header.n_subcarriers + n) * header.n_r + antenna];
        }
        const cf &at(std::size_t t, std::size_t n, std::size_t antenna) const
        {
            return data[(t * header.n_subcarriers + n) * header.n_r + antenna];
        }

        // n_r x (count * N) view of STTS [t0, t0 + count).
        Eigen::Map<const CMatrix<float>> block(std::size_t t0, std::size_t count) const
        {
            return {data.data() + t0 * header.n_subcarriers * header.n_r,
                    static_cast<Eigen::Index>(header.n_r),
                    static_cast<Eigen::Index>(count * header.n_subcarriers)};
        }

        // Throws MalformedTrace when the payload does not match the header.
        void check_dimensions() const;
    };

    ChannelTrace synthesize(const Scenario &scenario, const EvalConfig &cfg);
    ChannelTrace synthesize(const Scenario &scenario, const EvalConfig &cfg, const SamplingPlan &plan);
}
