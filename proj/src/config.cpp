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

#include "spatcon/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "spatcon/digest.hpp"
#include "spatcon/error.hpp"

namespace spatcon
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        struct Context
        {
            std::size_t line;
            std::string key;
        };

        [[noreturn]] void parse_fail(const Context &ctx, const std::string &what)
        {
            raise(ErrorCode::ParseError, "line " + std::to_string(ctx.line) + ": " + ctx.key + ": " + what);
        }

        double to_double(std::string_view v, const Context &ctx)
        {
            double out = 0.0;
            const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
            if (res.ec != std::errc() || res.ptr != v.data() + v.size())
                parse_fail(ctx, "expected a number, got '" + std::string(v) + "'");
            return out;
        }

        std::uint64_t to_uint(std::string_view v, const Context &ctx)
        {
            std::uint64_t out = 0;
            const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
            if (res.ec != std::errc() || res.ptr != v.data() + v.size())
                parse_fail(ctx, "expected a non-negative integer, got '" + std::string(v) + "'");
            return out;
        }

        using Setter = std::function<void(RunConfig &, std::string_view, const Context &)>;

        template <typename Get>
        Setter real_field(Get get)
        {
            return [get](RunConfig &c, std::string_view v, const Context &ctx) { get(c) = to_double(v, ctx); };
        }

        template <typename Get>
        Setter size_field(Get get)
        {
            return [get](RunConfig &c, std::string_view v, const Context &ctx) {
                get(c) = static_cast<std::size_t>(to_uint(v, ctx));
            };
        }

        template <typename Get>
        Setter optional_field(Get get, std::string_view empty_word)
        {
            return [get, empty_word](RunConfig &c, std::string_view v, const Context &ctx) {
                if (v == empty_word)
                    get(c).reset();
                else
                    get(c) = to_double(v, ctx);
            };
        }

        const std::map<std::string, std::map<std::string, Setter>> &schema()
        {
            static const std::map<std::string, std::map<std::string, Setter>> s = {
                {"eval",
                 {
                     {"tau", size_field([](RunConfig &c) -> auto & { return c.eval.tau; })},
                     {"n_subcarriers", size_field([](RunConfig &c) -> auto & { return c.eval.n_subcarriers; })},
                     {"stts_interval_s", real_field([](RunConfig &c) -> auto & { return c.eval.stts_interval; })},
                     {"lttl_interval_s", real_field([](RunConfig &c) -> auto & { return c.eval.lttl_interval; })},
                     {"lttl_count", size_field([](RunConfig &c) -> auto & { return c.eval.lttl_count; })},
                     {"carrier_frequency_hz", real_field([](RunConfig &c) -> auto & { return c.eval.carrier_frequency; })},
                     {"subcarrier_spacing_hz", real_field([](RunConfig &c) -> auto & { return c.eval.subcarrier_spacing; })},
                 }},
                {"scenario",
                 {
                     {"preset",
                      [](RunConfig &c, std::string_view v, const Context &ctx) {
                          const auto p = parse_preset(v);
                          if (!p)
                              parse_fail(ctx, "unknown preset '" + std::string(v) + "'");
                          c.scenario.preset = *p;
                      }},
                     {"seed", [](RunConfig &c, std::string_view v, const Context &ctx) { c.scenario.seed = to_uint(v, ctx); }},
                 }},
                {"track",
                 {
                     {"length_m", real_field([](RunConfig &c) -> auto & { return c.scenario.track_length; })},
                     {"speed_mps", real_field([](RunConfig &c) -> auto & { return c.scenario.speed; })},
                     {"tx_height_m", real_field([](RunConfig &c) -> auto & { return c.scenario.tx_height; })},
                 }},
                {"array",
                 {
                     {"n_columns", size_field([](RunConfig &c) -> auto & { return c.scenario.array.n_columns; })},
                     {"n_rows", size_field([](RunConfig &c) -> auto & { return c.scenario.array.n_rows; })},
                     {"n_polarizations", size_field([](RunConfig &c) -> auto & { return c.scenario.array.n_polarizations; })},
                     // radius_m / row_spacing_m are handled in read_config ("auto" support)
                     {"xpol_leakage_db", real_field([](RunConfig &c) -> auto & { return c.scenario.array.xpol_leakage_db; })},
                 }},
                {"pattern",
                 {
                     {"hpbw_azimuth_deg",
                      [](RunConfig &c, std::string_view v, const Context &ctx) {
                          c.scenario.pattern.hpbw_azimuth = deg2rad(to_double(v, ctx));
                      }},
                     {"hpbw_elevation_deg",
                      [](RunConfig &c, std::string_view v, const Context &ctx) {
                          c.scenario.pattern.hpbw_elevation = deg2rad(to_double(v, ctx));
                      }},
                     {"front_to_back_floor", real_field([](RunConfig &c) -> auto & { return c.scenario.pattern.front_to_back_floor; })},
                 }},
                {"synth",
                 {
                     {"k_factor_db", real_field([](RunConfig &c) -> auto & { return c.scenario.synth.k_factor_db; })},
                     {"amplitude_scale", real_field([](RunConfig &c) -> auto & { return c.scenario.synth.amplitude_scale; })},
                     {"snr_db", optional_field([](RunConfig &c) -> auto & { return c.scenario.synth.snr_db; }, "none")},
                     {"los_scatterers", size_field([](RunConfig &c) -> auto & { return c.scenario.synth.los_scatterers; })},
                     {"nlos_density", real_field([](RunConfig &c) -> auto & { return c.scenario.synth.nlos_density; })},
                     {"nlos_mean_lifetime_m", real_field([](RunConfig &c) -> auto & { return c.scenario.synth.nlos_mean_lifetime; })},
                     {"bs_height_m", optional_field([](RunConfig &c) -> auto & { return c.scenario.synth.bs_height; }, "auto")},
                 }},
                {"thresholds",
                 {
                     {"uncorrelated_level", real_field([](RunConfig &c) -> auto & { return c.thresholds.uncorrelated_level; })},
                     {"uncorrelated_within_m", real_field([](RunConfig &c) -> auto & { return c.thresholds.uncorrelated_within_m; })},
                     {"radial_level", real_field([](RunConfig &c) -> auto & { return c.thresholds.radial_level; })},
                     {"radial_at_m", real_field([](RunConfig &c) -> auto & { return c.thresholds.radial_at_m; })},
                     {"tangential_end_max", real_field([](RunConfig &c) -> auto & { return c.thresholds.tangential_end_max; })},
                     {"flat_range_max", real_field([](RunConfig &c) -> auto & { return c.thresholds.flat_range_max; })},
                     {"trend_slope_min", real_field([](RunConfig &c) -> auto & { return c.thresholds.trend_slope_min; })},
                 }},
            };
            return s;
        }
    }

    RunConfig read_config(std::string_view text, bool strict)
    {
        RunConfig cfg;
        std::string section;
        std::set<std::string> seen;
        std::optional<double> radius, row_spacing;

        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty() || line.front() == ';')
                continue;

            Context ctx{line_no, {}};
            if (line.front() == '[')
            {
                if (line.back() != ']')
                    parse_fail(ctx, "unterminated section header");
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (!schema().contains(section) && strict)
                    raise(ErrorCode::UnknownKey, "line " + std::to_string(line_no) + ": unknown section [" + section + "]");
                continue;
            }

            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                parse_fail(ctx, "expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            const std::string_view value = trim(line.substr(eq + 1));
            ctx.key = section + "." + key;
            if (section.empty())
                parse_fail(ctx, "key outside of any [section]");
            if (key.empty() || value.empty())
                parse_fail(ctx, "empty key or value");
            if (!seen.insert(ctx.key).second)
                parse_fail(ctx, "duplicate key");

            if (section == "array" && (key == "radius_m" || key == "row_spacing_m"))
            {
                auto &slot = key == "radius_m" ? radius : row_spacing;
                if (value == "auto")
                    slot.reset();
                else
                    slot = to_double(value, ctx);
                continue;
            }

            const auto sec = schema().find(section);
            if (sec == schema().end())
                continue; // unknown section, non-strict
            const auto it = sec->second.find(key);
            if (it == sec->second.end())
            {
                if (strict)
                    raise(ErrorCode::UnknownKey, "line " + std::to_string(line_no) + ": unknown key " + ctx.key);
                continue;
            }
            it->second(cfg, value, ctx);
        }

        ArrayConfig &array = cfg.scenario.array;
        array.carrier_frequency = cfg.eval.carrier_frequency;
        array.radius = radius.value_or(ArrayConfig::default_radius(array.carrier_frequency, array.n_columns));
        array.row_spacing = row_spacing.value_or(wavelength(array.carrier_frequency) / 2.0);

        cfg.eval.validate();
        array.validate();
        cfg.scenario.pattern.validate();
        cfg.thresholds.validate();
        Track probe;
        probe.length = cfg.scenario.track_length;
        probe.speed = cfg.scenario.speed;
        probe.tx_height = cfg.scenario.tx_height;
        probe.validate();
        return cfg;
    }

    RunConfig read_config_file(const std::string &path, bool strict)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            raise(ErrorCode::IoError, "cannot open config '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return read_config(ss.str(), strict);
    }

    std::string write_config(const RunConfig &c)
    {
        const auto f = [](double v) { return format_double(v); };
        const ScenarioParams &s = c.scenario;
        std::ostringstream os;
        os << "[eval]\n"
           << "tau = " << c.eval.tau << '\n'
           << "n_subcarriers = " << c.eval.n_subcarriers << '\n'
           << "stts_interval_s = " << f(c.eval.stts_interval) << '\n'
           << "lttl_interval_s = " << f(c.eval.lttl_interval) << '\n'
           << "lttl_count = " << c.eval.lttl_count << '\n'
           << "carrier_frequency_hz = " << f(c.eval.carrier_frequency) << '\n'
           << "subcarrier_spacing_hz = " << f(c.eval.subcarrier_spacing) << '\n'
           << "\n[scenario]\n"
           << "preset = " << to_string(s.preset) << '\n'
           << "seed = " << s.seed << '\n'
           << "\n[track]\n"
           << "length_m = " << f(s.track_length) << '\n'
           << "speed_mps = " << f(s.speed) << '\n'
           << "tx_height_m = " << f(s.tx_height) << '\n'
           << "\n[array]\n"
           << "n_columns = " << s.array.n_columns << '\n'
           << "n_rows = " << s.array.n_rows << '\n'
           << "n_polarizations = " << s.array.n_polarizations << '\n'
           << "radius_m = " << f(s.array.radius) << '\n'
           << "row_spacing_m = " << f(s.array.row_spacing) << '\n'
           << "xpol_leakage_db = " << f(s.array.xpol_leakage_db) << '\n'
           << "\n[pattern]\n"
           << "hpbw_azimuth_deg = " << f(rad2deg(s.pattern.hpbw_azimuth)) << '\n'
           << "hpbw_elevation_deg = " << f(rad2deg(s.pattern.hpbw_elevation)) << '\n'
           << "front_to_back_floor = " << f(s.pattern.front_to_back_floor) << '\n'
           << "\n[synth]\n"
           << "k_factor_db = " << f(s.synth.k_factor_db) << '\n'
           << "amplitude_scale = " << f(s.synth.amplitude_scale) << '\n'
           << "snr_db = " << (s.synth.snr_db ? f(*s.synth.snr_db) : std::string("none")) << '\n'
           << "los_scatterers = " << s.synth.los_scatterers << '\n'
           << "nlos_density = " << f(s.synth.nlos_density) << '\n'
           << "nlos_mean_lifetime_m = " << f(s.synth.nlos_mean_lifetime) << '\n'
           << "bs_height_m = " << (s.synth.bs_height ? f(*s.synth.bs_height) : std::string("auto")) << '\n'
           << "\n[thresholds]\n"
           << "uncorrelated_level = " << f(c.thresholds.uncorrelated_level) << '\n'
           << "uncorrelated_within_m = " << f(c.thresholds.uncorrelated_within_m) << '\n'
           << "radial_level = " << f(c.thresholds.radial_level) << '\n'
           << "radial_at_m = " << f(c.thresholds.radial_at_m) << '\n'
           << "tangential_end_max = " << f(c.thresholds.tangential_end_max) << '\n'
           << "flat_range_max = " << f(c.thresholds.flat_range_max) << '\n'
           << "trend_slope_min = " << f(c.thresholds.trend_slope_min) << '\n';
        return os.str();
    }

    std::string config_digest(const RunConfig &cfg) { return to_hex(fnv1a(write_config(cfg))); }

    bool operator==(const RunConfig &a, const RunConfig &b)
    {
        return a.scenario == b.scenario && a.eval == b.eval && a.thresholds == b.thresholds;
    }
}
