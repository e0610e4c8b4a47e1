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

#include <cstddef>
#include <vector>

#include "spatcon/types.hpp"

namespace spatcon
{
    // Straight track at constant speed. Positions lie in the horizontal plane z = tx_height.
    struct Track
    {
        Vector2D start = Vector2D::Zero();
        Vector2D heading = Vector2D::UnitX(); // unit norm
        double length = 40.0;                 // m
        double speed = 0.5;                   // m/s
        double tx_height = 1.5;               // m

        Position3D position_at(double distance) const;
        void validate() const;
    };

    struct BsConfig
    {
        Position3D position = Position3D(0.0, 0.0, 6.0);
        double boresight_azimuth = 0.0; // rad, array reference orientation

        void validate() const;
    };

    // Positions of the first tau STTS of every LTTS. Columns are STTS in time order.
    struct SamplingPlan
    {
        std::size_t tau = 0;
        std::vector<double> anchors;   // distance along track of each LTTS start
        std::vector<double> distances; // distance along track of each STTS
        Eigen::Matrix3Xd positions;

        std::size_t lttl_count() const { return anchors.size(); }
        std::size_t stts_count() const { return distances.size(); }
    };

    SamplingPlan sample_track(const Track &track, double stts_interval, double lttl_interval,
                              std::size_t lttl_count, std::size_t tau);

    struct SphericalCoords
    {
        double range;
        double azimuth;   // from boresight, counterclockwise positive, in (-pi, pi]
        double elevation; // asin(dz / range)
    };

    SphericalCoords relative_geometry(const BsConfig &bs, const Position3D &p);

    // Wraps an angle to (-pi, pi].
    double wrap_angle(double angle);
}
