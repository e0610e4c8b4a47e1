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

#include <cmath>

#include "spatcon/covar.hpp"
#include "spatcon/error.hpp"
#include "spatcon/synth.hpp"

#include "support.hpp"

using namespace spatcon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ArrayConfig single_antenna()
    {
        ArrayConfig a;
        a.n_columns = a.n_rows = a.n_polarizations = 1;
        return a;
    }

    // Hand-built scenario: BS at the origin, 6 m high, user moving along +x at mast height.
    Scenario line_of_sight_only(ArrayConfig array = single_antenna())
    {
        Scenario sc;
        sc.array = array;
        sc.track.start = {10.0, 0.0};
        sc.track.heading = {1.0, 0.0};
        sc.track.tx_height = 6.0;
        sc.los_present = true;
        return sc;
    }

    EvalConfig small_eval(std::size_t lttl_count = 10, std::size_t n_sub = 8)
    {
        EvalConfig cfg;
        cfg.lttl_count = lttl_count;
        cfg.n_subcarriers = n_sub;
        return cfg;
    }
}

TEST_CASE("preset names round-trip", "[synth]")
{
    for (const Preset p : {Preset::LosRadial, Preset::LosTangential, Preset::FarAway, Preset::NlosUncorrelated})
        CHECK(parse_preset(to_string(p)) == p);
    CHECK_FALSE(parse_preset("sideways").has_value());
}

TEST_CASE("scenario draws are deterministic in preset and seed", "[synth]")
{
    for (const Preset p : {Preset::LosRadial, Preset::LosTangential, Preset::FarAway, Preset::NlosUncorrelated})
    {
        const Scenario a = make_scenario(p, 11);
        const Scenario b = make_scenario(p, 11);
        CHECK(a.canonical() == b.canonical());
        CHECK(digest(a) == digest(b));
        CHECK(digest(a).hash != digest(make_scenario(p, 12)).hash);
    }
}

TEST_CASE("synthesis is deterministic", "[synth]")
{
    const Scenario sc = make_scenario(Preset::NlosUncorrelated, 3);
    const EvalConfig cfg = small_eval();
    const ChannelTrace a = synthesize(sc, cfg);
    const ChannelTrace b = synthesize(sc, cfg);
    CHECK(a.header == b.header);
    CHECK(a.data == b.data);
}

TEST_CASE("far_away tracks stay at least 100 m from the BS", "[synth]")
{
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
    {
        const Scenario sc = make_scenario(Preset::FarAway, seed);
        CHECK(digest(sc).min_bs_range >= 100.0);
        const SamplingPlan plan = sample_track(sc.track, 1.08e-3, 0.66, 120, 10);
        for (Eigen::Index t = 0; t < plan.positions.cols(); t += 37)
            CHECK(relative_geometry(sc.bs, plan.positions.col(t)).range >= 100.0);
    }
}

TEST_CASE("los_radial tracks keep a constant azimuth", "[synth]")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const Scenario sc = make_scenario(Preset::LosRadial, seed);
        const SamplingPlan plan = sample_track(sc.track, 1.08e-3, 0.66, 120, 10);
        double lo = 10.0, hi = -10.0;
        for (Eigen::Index t = 0; t < plan.positions.cols(); ++t)
        {
            const double az = relative_geometry(sc.bs, plan.positions.col(t)).azimuth;
            lo = std::min(lo, az);
            hi = std::max(hi, az);
        }
        // boresight may sit opposite the track, so compare on the circle
        CHECK(std::abs(wrap_angle(hi - lo)) < 1e-6);
    }
}

TEST_CASE("los presets use persistent scatterers, nlos has no LoS", "[synth]")
{
    const Scenario radial = make_scenario(Preset::LosRadial, 5);
    CHECK(radial.los_present);
    CHECK(radial.scatterers.size() == 10);
    for (const Scatterer &s : radial.scatterers)
        CHECK((s.birth <= 0.0 && s.death > radial.track.length));

    const Scenario nlos = make_scenario(Preset::NlosUncorrelated, 5);
    CHECK_FALSE(nlos.los_present);
    const SamplingPlan plan = sample_track(nlos.track, 1.08e-3, 0.66, 120, 1);
    for (const double d : plan.distances)
        CHECK_FALSE(active_scatterers(nlos, d).empty());
}

TEST_CASE("scatterer activity boundaries", "[synth]")
{
    Scenario sc = line_of_sight_only();
    Scatterer late;
    late.position = Position3D(20.0, 15.0, 5.0);
    late.amplitude = 1.0;
    late.birth = 12.0;
    late.death = 30.0;
    Scatterer full = late;
    full.position = Position3D(-20.0, 5.0, 3.0);
    full.birth = 0.0;
    full.death = 40.0;

    SECTION("before every birth nothing is active and the LoS-only channel is valid")
    {
        sc.scatterers = {late};
        CHECK(active_scatterers(sc, 5.0).empty());
        const ChannelGenerator gen(sc);
        CHECK(gen.paths(sc.track.position_at(5.0), 5.0).size() == 1);
        CHECK_NOTHROW(gen.snapshot(sc.track.position_at(5.0), 5.0, small_eval()));
        CHECK(active_scatterers(sc, 12.0).size() == 1);
        CHECK(active_scatterers(sc, 30.0).empty());
    }
    SECTION("a scatterer living over [0, 40] is active at every sample")
    {
        sc.scatterers = {full};
        const SamplingPlan plan = sample_track(sc.track, 1.08e-3, 0.66, 120, 10);
        for (const double d : plan.distances)
            CHECK(active_scatterers(sc, d).size() == 1);
    }
    SECTION("NLoS without a path somewhere on the track is rejected")
    {
        sc.los_present = false;
        sc.scatterers = {late};
        try
        {
            sc.validate();
            FAIL("expected NoActivePath");
        }
        catch (const Error &e)
        {
            CHECK(e.code() == ErrorCode::NoActivePath);
        }
    }
}

TEST_CASE("nlos active scatterer count matches the configured density", "[synth]")
{
    ScenarioParams params;
    params.preset = Preset::NlosUncorrelated;
    double total = 0.0;
    std::size_t samples = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed)
    {
        params.seed = seed;
        const Scenario sc = make_scenario(params);
        for (double d = 0.0; d < sc.track.length; d += 2.5)
        {
            total += static_cast<double>(active_scatterers(sc, d).size());
            ++samples;
        }
    }
    const double mean = total / static_cast<double>(samples);
    CHECK_THAT(mean, WithinRel(params.synth.nlos_density, 0.10));
}

TEST_CASE("static single path gives a constant magnitude", "[synth]")
{
    const Scenario sc = line_of_sight_only();
    EvalConfig cfg = small_eval(3, 1);
    cfg.tau = 4;
    SamplingPlan plan = sample_track(sc.track, cfg.stts_interval, cfg.lttl_interval, cfg.lttl_count, cfg.tau);
    for (Eigen::Index t = 0; t < plan.positions.cols(); ++t)
    {
        plan.positions.col(t) = sc.track.position_at(0.0);
        plan.distances[static_cast<std::size_t>(t)] = 0.0;
    }
    const ChannelTrace trace = synthesize(sc, cfg, plan);
    REQUIRE(trace.data.size() == 12);
    for (const cf &v : trace.data)
        CHECK(std::abs(v) == std::abs(trace.data[0]));
}

TEST_CASE("two-ray channel is periodic across subcarriers", "[synth]")
{
    // The scatterer sits on the BS-user line behind the user, so the extra path length is
    // twice the user-scatterer gap. A gap of c / (2 x 10 x 180 kHz) gives a 10-subcarrier period.
    Scenario sc = line_of_sight_only();
    const Position3D user = sc.track.position_at(20.0);
    const double gap = speed_of_light / (2.0 * 10.0 * 180e3);
    CHECK_THAT(gap, WithinAbs(83.28, 0.01));
    Scatterer s;
    s.position = user + Position3D(gap, 0.0, 0.0);
    s.amplitude = 1.0;
    s.birth = 0.0;
    s.death = 41.0;
    sc.scatterers = {s};

    const ChannelGenerator gen(sc);
    const auto paths = gen.paths(user, 20.0);
    REQUIRE(paths.size() == 2);
    const double delta_tau = paths[1].delay - paths[0].delay;
    CHECK_THAT(1.0 / (delta_tau * 180e3), WithinRel(10.0, 1e-9));

    EvalConfig cfg;
    const CMatrixXd h = gen.snapshot(user, 20.0, cfg);
    const Eigen::ArrayXd power = h.row(0).cwiseAbs2().transpose().array();
    for (Eigen::Index n = 0; n + 10 < power.size(); ++n)
        CHECK_THAT(power[n + 10], WithinRel(power[n], 1e-9));
    // and the fringe is visible: within one period the power is not constant
    CHECK(power.head(10).maxCoeff() - power.head(10).minCoeff() > 0.1 * power.head(10).maxCoeff());

    // direct two-ray formula
    const cd g0 = paths[0].gain, g1 = paths[1].gain;
    for (Eigen::Index n = 0; n < 20; ++n)
    {
        const double f = cfg.subcarrier_frequency(static_cast<std::size_t>(n));
        const double expected = std::norm(g0) + std::norm(g1) +
                                2.0 * std::real(g0 * std::conj(g1) * std::polar(1.0, 2.0 * pi * f * delta_tau));
        CHECK_THAT(power[n], WithinRel(expected, 1e-9));
    }
}

TEST_CASE("moving user shows the analytic Doppler phase advance", "[synth]")
{
    const Scenario sc = line_of_sight_only();
    EvalConfig cfg = small_eval(2, 1);
    const ChannelTrace trace = synthesize(sc, cfg);
    const double lambda = wavelength(cfg.carrier_frequency);
    const double radial_velocity = sc.track.speed; // user recedes along the BS line at mast height
    const double expected = -2.0 * pi * radial_velocity / lambda * cfg.stts_interval;
    for (std::size_t t = 0; t + 1 < cfg.tau; ++t)
    {
        const cd a = trace.at(t, 0, 0), b = trace.at(t + 1, 0, 0);
        CHECK_THAT(std::arg(cd(b) / cd(a)), WithinAbs(expected, 1e-5));
    }
}

TEST_CASE("trace samples equal the channel at the plan positions", "[synth]")
{
    const Scenario sc = make_scenario(Preset::LosTangential, 4);
    const EvalConfig cfg = small_eval(6, 12);
    const ChannelTrace trace = synthesize(sc, cfg);
    const SamplingPlan plan = sample_track(sc.track, cfg.stts_interval, cfg.lttl_interval, cfg.lttl_count, cfg.tau);
    const ChannelGenerator gen(sc);
    for (std::size_t t = 0; t < trace.header.stts_count; t += 7)
    {
        const CMatrixXd h = gen.snapshot(plan.positions.col(static_cast<Eigen::Index>(t)), plan.distances[t], cfg);
        const double scale = h.cwiseAbs().maxCoeff();
        for (std::size_t n = 0; n < cfg.n_subcarriers; ++n)
            for (std::size_t a = 0; a < trace.header.n_r; ++a)
                CHECK(std::abs(cd(trace.at(t, n, a)) - h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(n))) <=
                      1e-6 * scale);
    }
    CHECK(trace.header.anchors == plan.anchors);
}

TEST_CASE("amplitude scale multiplies the channel", "[synth]")
{
    Scenario sc = make_scenario(Preset::LosRadial, 9);
    const EvalConfig cfg = small_eval(2, 4);
    const ChannelTrace a = synthesize(sc, cfg);
    sc.amplitude_scale = 3.0;
    const ChannelTrace b = synthesize(sc, cfg);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        CHECK(std::abs(b.data[i] - 3.0f * a.data[i]) <= 1e-5f * std::abs(b.data[i]) + 1e-12f);
}

TEST_CASE("LoS K-factor is realized at the track midpoint", "[synth]")
{
    const Scenario sc = make_scenario(Preset::LosRadial, 2);
    const ChannelGenerator gen(sc);
    const double mid = 0.5 * sc.track.length;
    const auto paths = gen.paths(sc.track.position_at(mid), mid);
    double scattered = 0.0;
    for (std::size_t i = 1; i < paths.size(); ++i)
        scattered += std::norm(paths[i].gain);
    REQUIRE(paths[0].los);
    CHECK_THAT(std::norm(paths[0].gain) / scattered, WithinRel(10.0, 1e-9));
}

TEST_CASE("a single LoS path gives a rank-one covariance along the steering vector", "[synth]")
{
    const Scenario sc = line_of_sight_only(ArrayConfig{});
    const EvalConfig cfg = small_eval(1, 16);
    const ChannelTrace trace = synthesize(sc, cfg);
    const CovarianceMatrix r = estimate(segment(trace).front());
    const Eigen::SelfAdjointEigenSolver<CMatrixXd> eig(r.matrix);
    const CVectorXd v = eig.eigenvectors().col(eig.eigenvalues().size() - 1);

    const SphericalCoords g = relative_geometry(sc.bs, sc.track.position_at(0.0));
    const CVectorXd a = ArrayManifold(sc.array, sc.pattern).steer(g.azimuth, g.elevation);
    CHECK(std::abs(v.dot(a)) / a.norm() >= 0.99);
    CHECK(eig.eigenvalues()[eig.eigenvalues().size() - 2] < 1e-6 * eig.eigenvalues().maxCoeff());
}

TEST_CASE("receiver noise follows the requested SNR and is seeded", "[synth]")
{
    Scenario sc = make_scenario(Preset::LosRadial, 6);
    const EvalConfig cfg = small_eval(4, 16);
    const ChannelTrace clean = synthesize(sc, cfg);
    sc.snr_db = 10.0;
    const ChannelTrace noisy = synthesize(sc, cfg);
    CHECK(synthesize(sc, cfg).data == noisy.data);

    double signal = 0.0, noise = 0.0;
    for (std::size_t i = 0; i < clean.data.size(); ++i)
    {
        signal += std::norm(cd(clean.data[i]));
        noise += std::norm(cd(noisy.data[i]) - cd(clean.data[i]));
    }
    CHECK_THAT(10.0 * std::log10(signal / noise), WithinAbs(10.0, 0.2));
}

TEST_CASE("trace dimensions follow the evaluation config", "[synth]")
{
    const Scenario sc = make_scenario(Preset::FarAway, 1);
    const ChannelTrace trace = synthesize(sc, small_eval(10, 5));
    CHECK(trace.header.stts_count == 100);
    CHECK(trace.header.n_r == 128);
    CHECK(trace.data.size() == 100u * 5u * 128u);
    CHECK(trace.header.scenario.preset == "far_away");
    CHECK_NOTHROW(trace.header.validate());
    CHECK_NOTHROW(trace.check_dimensions());
}
