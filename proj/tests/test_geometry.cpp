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

#include "spatcon/error.hpp"
#include "spatcon/geometry.hpp"

using namespace spatcon;
using Catch::Matchers::WithinAbs;

TEST_CASE("default plan spaces anchors 0.33 m apart within the 40 m track", "[geometry]")
{
    const Track track;
    const SamplingPlan plan = sample_track(track, 1.08e-3, 0.66, 120, 10);
    REQUIRE(plan.lttl_count() == 120);
    REQUIRE(plan.stts_count() == 1200);
    for (std::size_t k = 0; k < plan.anchors.size(); ++k)
        CHECK_THAT(plan.anchors[k], WithinAbs(0.33 * static_cast<double>(k), 1e-12));
    CHECK_THAT(plan.anchors.back(), WithinAbs(39.27, 1e-9));
    CHECK(plan.anchors.back() <= track.length);
}

TEST_CASE("single-sample plan sits at the track start", "[geometry]")
{
    Track track;
    track.start = {3.0, -2.0};
    const SamplingPlan plan = sample_track(track, 1.08e-3, 0.66, 1, 1);
    REQUIRE(plan.positions.cols() == 1);
    CHECK(plan.positions.col(0).isApprox(Position3D(3.0, -2.0, 1.5)));
    CHECK(plan.distances[0] == 0.0);
}

TEST_CASE("travel within one window is tau x stts_interval x speed", "[geometry]")
{
    const SamplingPlan plan = sample_track(Track{}, 1.08e-3, 0.66, 120, 10);
    // the window covers 10 STTS; the travel from its first STTS to the start of the next STTS run
    const double within = plan.distances[9] - plan.distances[0] + 1.08e-3 * 0.5;
    CHECK_THAT(within, WithinAbs(5.4e-3, 1e-12));
    CHECK_THAT(plan.distances[10] - plan.distances[0], WithinAbs(0.33, 1e-12));
}

TEST_CASE("plan validation", "[geometry]")
{
    const Track track;
    SECTION("window longer than the LTTS interval")
    {
        CHECK_THROWS_AS(sample_track(track, 0.1, 0.66, 10, 10), Error);
        try
        {
            sample_track(track, 0.1, 0.66, 10, 10);
        }
        catch (const Error &e)
        {
            CHECK(e.code() == ErrorCode::InvalidInterval);
        }
    }
    SECTION("plan longer than the track")
    {
        try
        {
            sample_track(track, 1.08e-3, 0.66, 200, 10);
            FAIL("expected PlanExceedsTrack");
        }
        catch (const Error &e)
        {
            CHECK(e.code() == ErrorCode::PlanExceedsTrack);
        }
    }
    SECTION("zero tau")
    {
        CHECK_THROWS_AS(sample_track(track, 1.08e-3, 0.66, 10, 0), Error);
    }
}

TEST_CASE("relative geometry of hand cases", "[geometry]")
{
    const BsConfig bs;

    SECTION("same height along boresight")
    {
        const SphericalCoords s = relative_geometry(bs, Position3D(10.0, 0.0, 6.0));
        CHECK_THAT(s.range, WithinAbs(10.0, 1e-12));
        CHECK_THAT(s.azimuth, WithinAbs(0.0, 1e-12));
        CHECK_THAT(s.elevation, WithinAbs(0.0, 1e-12));
    }
    SECTION("directly below")
    {
        const SphericalCoords s = relative_geometry(bs, Position3D(0.0, 0.0, 0.0));
        CHECK_THAT(s.range, WithinAbs(6.0, 1e-12));
        CHECK_THAT(s.elevation, WithinAbs(-pi / 2.0, 1e-12));
    }
    SECTION("ground user 30 m out")
    {
        const SphericalCoords s = relative_geometry(bs, Position3D(30.0, 0.0, 1.5));
        CHECK_THAT(s.range, WithinAbs(std::sqrt(900.0 + 20.25), 1e-12));
        CHECK_THAT(s.range, WithinAbs(30.336, 1e-3));
        CHECK_THAT(s.elevation, WithinAbs(std::asin(-4.5 / std::sqrt(920.25)), 1e-12));
        CHECK_THAT(s.elevation, WithinAbs(-0.1489, 1e-4));
    }
    SECTION("azimuth is counterclockwise from the boresight")
    {
        BsConfig rotated = bs;
        rotated.boresight_azimuth = pi / 2.0;
        CHECK_THAT(relative_geometry(bs, Position3D(0.0, 5.0, 6.0)).azimuth, WithinAbs(pi / 2.0, 1e-12));
        CHECK_THAT(relative_geometry(rotated, Position3D(0.0, 5.0, 6.0)).azimuth, WithinAbs(0.0, 1e-12));
        CHECK_THAT(relative_geometry(rotated, Position3D(-5.0, 0.0, 6.0)).azimuth, WithinAbs(pi / 2.0, 1e-12));
    }
    SECTION("coincident points")
    {
        try
        {
            relative_geometry(bs, bs.position);
            FAIL("expected CoincidentPoints");
        }
        catch (const Error &e)
        {
            CHECK(e.code() == ErrorCode::CoincidentPoints);
        }
    }
}

TEST_CASE("a radial track keeps its azimuth", "[geometry]")
{
    const BsConfig bs;
    for (const double angle : {0.0, 0.7, -2.1, 3.0})
    {
        Track track;
        track.heading = {std::cos(angle), std::sin(angle)};
        track.start = 6.0 * track.heading;
        const SamplingPlan plan = sample_track(track, 1.08e-3, 0.66, 120, 10);
        const double az0 = relative_geometry(bs, plan.positions.col(0)).azimuth;
        double prev_el = relative_geometry(bs, plan.positions.col(0)).elevation;
        for (Eigen::Index t = 1; t < plan.positions.cols(); ++t)
        {
            const SphericalCoords s = relative_geometry(bs, plan.positions.col(t));
            CHECK(std::abs(wrap_angle(s.azimuth - az0)) < 1e-9);
            CHECK(s.elevation >= prev_el - 1e-12); // receding user: elevation rises toward 0
            prev_el = s.elevation;
        }
    }
}

TEST_CASE("a tangential track sweeps azimuth monotonically", "[geometry]")
{
    const BsConfig bs;
    Track track;
    track.heading = {0.0, 1.0};
    track.start = {8.0, -20.0};
    const SamplingPlan plan = sample_track(track, 1.08e-3, 0.66, 120, 1);
    double prev = relative_geometry(bs, plan.positions.col(0)).azimuth;
    for (Eigen::Index t = 1; t < plan.positions.cols(); ++t)
    {
        const double az = relative_geometry(bs, plan.positions.col(t)).azimuth;
        CHECK(az > prev);
        prev = az;
    }
}

TEST_CASE("wrap_angle maps into (-pi, pi]", "[geometry]")
{
    CHECK_THAT(wrap_angle(3.0 * pi), WithinAbs(pi, 1e-12));
    CHECK_THAT(wrap_angle(-pi), WithinAbs(pi, 1e-12));
    CHECK_THAT(wrap_angle(2.0 * pi + 0.25), WithinAbs(0.25, 1e-12));
    CHECK_THAT(wrap_angle(-0.25), WithinAbs(-0.25, 1e-15));
}
