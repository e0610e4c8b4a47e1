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

#include "spatcon/synth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spatcon/digest.hpp"
#include "spatcon/error.hpp"
#include "spatcon/parallel.hpp"
#include "spatcon/random.hpp"

namespace spatcon
{
    std::string_view to_string(Preset preset)
    {
        switch (preset)
        {
        case Preset::LosRadial: return "los_radial";
        case Preset::LosTangential: return "los_tangential";
        case Preset::FarAway: return "far_away";
        case Preset::NlosUncorrelated: return "nlos_uncorrelated";
        }
        return "unknown";
    }

    std::optional<Preset> parse_preset(std::string_view name)
    {
        for (const Preset p : {Preset::LosRadial, Preset::LosTangential, Preset::FarAway, Preset::NlosUncorrelated})
            if (to_string(p) == name)
                return p;
        return std::nullopt;
    }

    // ---------------------------------------------------------------------------------------------
    // Scenario

    namespace
    {
        // True if the union of [birth, death) covers [0, length].
        bool covers_track(std::vector<Scatterer> s, double length)
        {
            std::sort(s.begin(), s.end(), [](const Scatterer &a, const Scatterer &b) { return a.birth < b.birth; });
            double reach = 0.0; // [0, reach) is covered
            for (const Scatterer &sc : s)
            {
                if (reach > length)
                    break;
                if (sc.birth > reach)
                    return false;
                reach = std::max(reach, sc.death);
            }
            return reach > length;
        }
    }

    void Scenario::validate() const
    {
        bs.validate();
        track.validate();
        array.validate();
        pattern.validate();
        if (!(amplitude_scale > 0.0) || !std::isfinite(amplitude_scale))
            raise(ErrorCode::InvalidConfig, "amplitude scale must be > 0");
        if (los_present && !(k_factor > 0.0))
            raise(ErrorCode::InvalidConfig, "k_factor must be > 0 when LoS is present");
        for (const Scatterer &s : scatterers)
        {
            if (!(s.birth < s.death))
                raise(ErrorCode::InvalidConfig, "scatterer birth must precede death");
            if (s.amplitude == cd(0.0, 0.0) || !std::isfinite(std::abs(s.amplitude)) || !s.position.allFinite())
                raise(ErrorCode::InvalidConfig, "scatterer amplitude must be nonzero and finite");
            if ((s.position - bs.position).norm() == 0.0)
                raise(ErrorCode::InvalidConfig, "scatterer coincides with the BS");
        }
        if (!los_present && !covers_track(scatterers, track.length))
            raise(ErrorCode::NoActivePath, "scatterer lifetimes leave part of the track without any path");
    }

    std::string Scenario::canonical() const
    {
        std::ostringstream os;
        const auto f = [](double v) { return format_double(v); };
        os << "preset=" << (preset ? to_string(*preset) : std::string_view("custom")) << '\n'
           << "seed=" << seed << '\n'
           << "bs=" << f(bs.position.x()) << ',' << f(bs.position.y()) << ',' << f(bs.position.z()) << ','
           << f(bs.boresight_azimuth) << '\n'
           << "array=" << array.n_columns << ',' << array.n_rows << ',' << array.n_polarizations << ','
           << f(array.radius) << ',' << f(array.row_spacing) << ',' << f(array.carrier_frequency) << ','
           << f(array.xpol_leakage_db) << '\n'
           << "pattern=" << f(pattern.hpbw_azimuth) << ',' << f(pattern.hpbw_elevation) << ','
           << f(pattern.front_to_back_floor) << '\n'
           << "track=" << f(track.start.x()) << ',' << f(track.start.y()) << ',' << f(track.heading.x()) << ','
           << f(track.heading.y()) << ',' << f(track.length) << ',' << f(track.speed) << ',' << f(track.tx_height)
           << '\n'
           << "los=" << los_present << ',' << f(k_factor) << ',' << f(amplitude_scale) << ','
           << (snr_db ? f(*snr_db) : std::string("none")) << '\n';
        for (const Scatterer &s : scatterers)
            os << "scatterer=" << f(s.position.x()) << ',' << f(s.position.y()) << ',' << f(s.position.z()) << ','
               << f(s.amplitude.real()) << ',' << f(s.amplitude.imag()) << ',' << f(s.birth) << ',' << f(s.death)
               << '\n';
        return os.str();
    }

    std::uint64_t Scenario::hash() const { return fnv1a(canonical()); }

    std::pair<double, double> bs_range_bounds(const BsConfig &bs, const Track &track)
    {
        const Position3D a = track.position_at(0.0);
        const Position3D b = track.position_at(track.length);
        const Eigen::Vector3d ab = b - a;
        const double t = std::clamp((bs.position - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
        const double closest = (a + t * ab - bs.position).norm();
        const double farthest = std::max((a - bs.position).norm(), (b - bs.position).norm());
        return {closest, farthest};
    }

    ScenarioDigest digest(const Scenario &scenario)
    {
        ScenarioDigest d;
        d.hash = to_hex(scenario.hash());
        d.preset = scenario.preset ? std::string(to_string(*scenario.preset)) : std::string();
        d.seed = scenario.seed;
        d.los_present = scenario.los_present;
        d.k_factor_db = 10.0 * std::log10(scenario.k_factor);
        d.n_scatterers = scenario.scatterers.size();
        d.bs_height = scenario.bs.position.z();
        std::tie(d.min_bs_range, d.max_bs_range) = bs_range_bounds(scenario.bs, scenario.track);
        d.array_radius = scenario.array.radius;
        d.row_spacing = scenario.array.row_spacing;
        d.n_columns = scenario.array.n_columns;
        d.n_rows = scenario.array.n_rows;
        d.n_polarizations = scenario.array.n_polarizations;
        d.xpol_leakage_db = scenario.array.xpol_leakage_db;
        d.hpbw_azimuth_deg = rad2deg(scenario.pattern.hpbw_azimuth);
        d.hpbw_elevation_deg = rad2deg(scenario.pattern.hpbw_elevation);
        d.front_to_back_floor = scenario.pattern.front_to_back_floor;
        d.amplitude_scale = scenario.amplitude_scale;
        d.snr_db = scenario.snr_db;
        return d;
    }

    // ---------------------------------------------------------------------------------------------
    // Presets

    namespace
    {
        Vector2D unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

        // Persistent scatterers in a ring of 10-40 m around the track midpoint.
        void add_persistent_scatterers(Scenario &sc, Rng &rng, std::size_t count, const Vector2D &center)
        {
            for (std::size_t i = 0; i < count; ++i)
            {
                Scatterer s;
                do
                {
                    const Vector2D xy = center + rng.uniform(10.0, 40.0) * unit(rng.uniform(0.0, 2.0 * pi));
                    s.position = Position3D(xy.x(), xy.y(), rng.uniform(0.0, 10.0));
                } while ((s.position - sc.bs.position).norm() < 2.0);
                s.amplitude = rng.complex_normal();
                s.birth = 0.0;
                s.death = sc.track.length + 1.0;
                sc.scatterers.push_back(s);
            }
        }

        Scatterer random_nlos_scatterer(Rng &rng, const Position3D &bs, double birth, double death)
        {
            Scatterer s;
            const Vector2D xy = bs.head<2>() + rng.uniform(5.0, 60.0) * unit(rng.uniform(0.0, 2.0 * pi));
            s.position = Position3D(xy.x(), xy.y(), rng.uniform(0.0, 15.0));
            s.amplitude = rng.complex_normal();
            s.birth = birth;
            s.death = death;
            return s;
        }

        // Poisson births along distance with exponential lifetimes; the initial population is the
        // stationary one, so the concurrent count is Poisson(density) everywhere on the track.
        void add_birth_death_scatterers(Scenario &sc, Rng &rng, double density, double mean_lifetime)
        {
            const double length = sc.track.length;
            const std::uint64_t initial = rng.poisson(density);
            for (std::uint64_t i = 0; i < initial; ++i)
                sc.scatterers.push_back(random_nlos_scatterer(rng, sc.bs.position, 0.0, rng.exponential(mean_lifetime)));

            const double mean_gap = mean_lifetime / density;
            double s = rng.exponential(mean_gap);
            while (s < length)
            {
                sc.scatterers.push_back(random_nlos_scatterer(rng, sc.bs.position, s, s + rng.exponential(mean_lifetime)));
                s += rng.exponential(mean_gap);
            }
        }

        Scenario draw_scenario(const ScenarioParams &params, std::uint64_t attempt)
        {
            Rng rng(params.seed, attempt);

            Scenario sc;
            sc.preset = params.preset;
            sc.seed = params.seed;
            sc.array = params.array;
            sc.pattern = params.pattern;
            sc.amplitude_scale = params.synth.amplitude_scale;
            sc.snr_db = params.synth.snr_db;
            sc.k_factor = std::pow(10.0, params.synth.k_factor_db / 10.0);
            sc.track.length = params.track_length;
            sc.track.speed = params.speed;
            sc.track.tx_height = params.tx_height;

            // Shared draws: every preset consumes these in the same order, so radial and
            // tangential scenarios with equal seeds share BS height and offset.
            double height = rng.bernoulli(0.5) ? 6.0 : 3.0;
            if (params.synth.bs_height)
                height = *params.synth.bs_height;
            const double offset_u = rng.uniform();
            const double psi = rng.uniform(0.0, 2.0 * pi);
            sc.bs.boresight_azimuth = rng.uniform(-pi, pi);
            sc.bs.position = Position3D(0.0, 0.0, height);

            // Offset range scales with mast height so that the elevation sweep along a radial track
            // stays moderate. Both ranges lie inside 5-15 m.
            const double offset = height < 4.5 ? 6.0 + 3.0 * offset_u : 13.0 + 2.0 * offset_u;
            const Vector2D u = unit(psi);
            const double half = 0.5 * sc.track.length;

            switch (params.preset)
            {
            case Preset::LosRadial:
            {
                sc.los_present = true;
                sc.track.start = offset * u;
                sc.track.heading = u;
                add_persistent_scatterers(sc, rng, params.synth.los_scatterers, sc.track.start + half * u);
                break;
            }
            case Preset::LosTangential:
            {
                sc.los_present = true;
                const Vector2D mid = offset * u;
                const Vector2D v(-u.y(), u.x());
                sc.track.start = mid - half * v;
                sc.track.heading = v;
                add_persistent_scatterers(sc, rng, params.synth.los_scatterers, mid);
                break;
            }
            case Preset::FarAway:
            {
                sc.los_present = true;
                const Vector2D mid = rng.uniform(300.0, 500.0) * u;
                const Vector2D v = unit(rng.uniform(0.0, 2.0 * pi));
                sc.track.start = mid - half * v;
                sc.track.heading = v;
                add_persistent_scatterers(sc, rng, params.synth.los_scatterers, mid);
                break;
            }
            case Preset::NlosUncorrelated:
            {
                sc.los_present = false;
                const Vector2D mid = rng.uniform(10.0, 40.0) * u;
                const Vector2D v = unit(rng.uniform(0.0, 2.0 * pi));
                sc.track.start = mid - half * v;
                sc.track.heading = v;
                add_birth_death_scatterers(sc, rng, params.synth.nlos_density, params.synth.nlos_mean_lifetime);
                break;
            }
            }
            return sc;
        }
    }

    Scenario make_scenario(const ScenarioParams &params)
    {
        if (params.preset == Preset::NlosUncorrelated &&
            (!(params.synth.nlos_density > 0.0) || !(params.synth.nlos_mean_lifetime > 0.0)))
            raise(ErrorCode::InvalidConfig, "NLoS density and mean lifetime must be > 0");

        // A draw whose lifetimes leave a gap on the track is redrawn from the next substream.
        for (std::uint64_t attempt = 0; attempt < 64; ++attempt)
        {
            Scenario sc = draw_scenario(params, attempt);
            try
            {
                sc.validate();
                return sc;
            }
            catch (const Error &e)
            {
                if (e.code() != ErrorCode::NoActivePath)
                    throw;
            }
        }
        raise(ErrorCode::NoActivePath, "could not draw a scenario with a path at every track position");
    }

    Scenario make_scenario(Preset preset, std::uint64_t seed)
    {
        ScenarioParams params;
        params.preset = preset;
        params.seed = seed;
        return make_scenario(params);
    }

    std::vector<Scatterer> active_scatterers(const Scenario &scenario, double distance)
    {
        std::vector<Scatterer> out;
        for (const Scatterer &s : scenario.scatterers)
            if (s.active_at(distance))
                out.push_back(s);
        return out;
    }

    // ---------------------------------------------------------------------------------------------
    // Channel evaluation

    ChannelGenerator::ChannelGenerator(Scenario scenario)
        : scenario_(std::move(scenario)), manifold_(scenario_.array, scenario_.pattern)
    {
        scenario_.validate();
        if (!scenario_.los_present)
            return;

        const double mid = 0.5 * scenario_.track.length;
        const Position3D p = scenario_.track.position_at(mid);
        double scattered_power = 0.0;
        for (const Scatterer &s : scenario_.scatterers)
        {
            if (!s.active_at(mid))
                continue;
            const double length = (s.position - p).norm() + (scenario_.bs.position - s.position).norm();
            scattered_power += std::norm(s.amplitude) / (length * length);
        }
        if (scattered_power > 0.0)
        {
            const double range = (p - scenario_.bs.position).norm();
            los_scale_ = range * std::sqrt(scenario_.k_factor * scattered_power);
        }
    }

    std::vector<PathSample> ChannelGenerator::paths(const Position3D &p, double distance) const
    {
        const Scenario &sc = scenario_;
        std::vector<PathSample> out;
        if (sc.los_present)
        {
            const SphericalCoords g = relative_geometry(sc.bs, p);
            out.push_back({cd(sc.amplitude_scale * los_scale_ / g.range, 0.0), g.range / speed_of_light, g.azimuth,
                           g.elevation, true});
        }
        for (const Scatterer &s : sc.scatterers)
        {
            if (!s.active_at(distance))
                continue;
            const SphericalCoords g = relative_geometry(sc.bs, s.position);
            const double length = (s.position - p).norm() + g.range;
            out.push_back({sc.amplitude_scale * s.amplitude / length, length / speed_of_light, g.azimuth, g.elevation,
                           false});
        }
        return out;
    }

    CMatrixXd ChannelGenerator::snapshot(const Position3D &p, double distance, const EvalConfig &cfg) const
    {
        const std::vector<PathSample> ps = paths(p, distance);
        if (ps.empty())
            raise(ErrorCode::NoActivePath, "no active path at distance " + format_double(distance) + " m");

        const auto n_r = static_cast<Eigen::Index>(manifold_.size());
        const auto n_sc = static_cast<Eigen::Index>(cfg.n_subcarriers);
        CMatrixXd h = CMatrixXd::Zero(n_r, n_sc);
        CVectorXd a(n_r);
        CVectorXd phasor(n_sc);
        for (const PathSample &path : ps)
        {
            manifold_.steer_into(path.azimuth, path.elevation, a);
            a *= path.gain;
            for (Eigen::Index n = 0; n < n_sc; ++n)
                phasor[n] = std::polar(1.0, -2.0 * pi * cfg.subcarrier_frequency(static_cast<std::size_t>(n)) * path.delay);
            h.noalias() += a * phasor.transpose();
        }
        return h;
    }

    // ---------------------------------------------------------------------------------------------
    // Traces

    EvalConfig TraceHeader::eval_config() const
    {
        EvalConfig cfg;
        cfg.tau = tau;
        cfg.n_subcarriers = n_subcarriers;
        cfg.stts_interval = stts_interval;
        cfg.lttl_interval = lttl_interval;
        cfg.lttl_count = lttl_count;
        cfg.carrier_frequency = carrier_frequency;
        cfg.subcarrier_spacing = subcarrier_spacing;
        return cfg;
    }

    void TraceHeader::validate() const
    {
        if (n_r == 0 || n_subcarriers == 0 || tau == 0 || lttl_count == 0)
            raise(ErrorCode::HeaderInconsistent, "zero dimension in trace header");
        if (stts_count != lttl_count * tau)
            raise(ErrorCode::HeaderInconsistent, "stts_count " + std::to_string(stts_count) + " != lttl_count x tau");
        if (anchors.size() != lttl_count)
            raise(ErrorCode::HeaderInconsistent, "anchor count does not match lttl_count");
        for (std::size_t k = 0; k < anchors.size(); ++k)
        {
            if (!std::isfinite(anchors[k]) || (k > 0 && !(anchors[k] > anchors[k - 1])))
                raise(ErrorCode::HeaderInconsistent, "anchor distances must be finite and strictly increasing");
        }
        if (scenario.n_columns * scenario.n_rows * scenario.n_polarizations != n_r && scenario.n_columns != 0)
            raise(ErrorCode::HeaderInconsistent, "array dimensions do not match n_r");
        try
        {
            eval_config().validate();
        }
        catch (const Error &e)
        {
            raise(ErrorCode::HeaderInconsistent, e.what());
        }
    }

    void ChannelTrace::check_dimensions() const
    {
        const std::size_t expected = header.stts_count * header.n_subcarriers * header.n_r;
        if (data.size() != expected)
            raise(ErrorCode::MalformedTrace, "payload holds " + std::to_string(data.size()) + " coefficients, header implies " +
                                                 std::to_string(expected));
        if (header.stts_count != header.lttl_count * header.tau || header.anchors.size() != header.lttl_count)
            raise(ErrorCode::MalformedTrace, "trace header dimensions are inconsistent");
    }

    ChannelTrace synthesize(const Scenario &scenario, const EvalConfig &cfg)
    {
        cfg.validate();
        const SamplingPlan plan =
            sample_track(scenario.track, cfg.stts_interval, cfg.lttl_interval, cfg.lttl_count, cfg.tau);
        return synthesize(scenario, cfg, plan);
    }

    ChannelTrace synthesize(const Scenario &scenario, const EvalConfig &cfg, const SamplingPlan &plan)
    {
        cfg.validate();
        if (plan.tau != cfg.tau || plan.lttl_count() != cfg.lttl_count)
            raise(ErrorCode::InvalidConfig, "sampling plan does not match the evaluation config");

        // Steering phases use the array's carrier; keep it consistent with the band.
        Scenario sc = scenario;
        sc.array.carrier_frequency = cfg.carrier_frequency;
        const ChannelGenerator gen(sc);

        ChannelTrace trace;
        TraceHeader &h = trace.header;
        h.n_r = sc.array.n_r();
        h.n_subcarriers = cfg.n_subcarriers;
        h.stts_count = plan.stts_count();
        h.tau = cfg.tau;
        h.lttl_count = cfg.lttl_count;
        h.stts_interval = cfg.stts_interval;
        h.lttl_interval = cfg.lttl_interval;
        h.carrier_frequency = cfg.carrier_frequency;
        h.subcarrier_spacing = cfg.subcarrier_spacing;
        h.anchors = plan.anchors;
        h.scenario = digest(sc);

        const std::size_t per_stts = h.n_r * h.n_subcarriers;
        trace.data.resize(h.stts_count * per_stts);
        std::vector<double> power(h.stts_count, 0.0);

        parallel_for(h.stts_count, [&](std::size_t t) {
            const CMatrixXd snap = gen.snapshot(plan.positions.col(static_cast<Eigen::Index>(t)), plan.distances[t], cfg);
            cf *dst = trace.data.data() + t * per_stts;
            // column-major n_r x N matches the antenna-fastest layout
            for (Eigen::Index i = 0; i < snap.size(); ++i)
                dst[i] = cf(static_cast<float>(snap.data()[i].real()), static_cast<float>(snap.data()[i].imag()));
            power[t] = snap.squaredNorm();
        });

        if (sc.snr_db)
        {
            double total = 0.0;
            for (const double p : power)
                total += p;
            const double mean_power = total / static_cast<double>(trace.data.size());
            const double sigma = std::sqrt(mean_power / std::pow(10.0, *sc.snr_db / 10.0));
            parallel_for(h.stts_count, [&](std::size_t t) {
                Rng rng(sc.seed, 0x4E4F495345ULL + t); // per-STTS substream
                cf *dst = trace.data.data() + t * per_stts;
                for (std::size_t i = 0; i < per_stts; ++i)
                {
                    const cd v = cd(dst[i].real(), dst[i].imag()) + sigma * rng.complex_normal();
                    dst[i] = cf(static_cast<float>(v.real()), static_cast<float>(v.imag()));
                }
            });
        }
        return trace;
    }
}
