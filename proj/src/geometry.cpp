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

#include "spatcon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spatcon/error.hpp"

namespace spatcon
{
    Position3D Track::position_at(double distance) const
    {
        const Vector2D xy = start + distance * heading;
        return {xy.x(), xy.y(), tx_height};
    }

    void Track::validate() const
    {
        if (!start.allFinite() || !std::isfinite(tx_height))
            raise(ErrorCode::InvalidConfig, "track start must be finite");
        if (!(length > 0.0) || !std::isfinite(length))
            raise(ErrorCode::InvalidConfig, "track length must be > 0");
        if (!(speed > 0.0) || !std::isfinite(speed))
            raise(ErrorCode::InvalidConfig, "track speed must be > 0");
        if (std::abs(heading.norm() - 1.0) > 1e-9)
            raise(ErrorCode::InvalidConfig, "track heading must have unit norm");
    }

    void BsConfig::validate() const
    {
        if (!position.allFinite() || !std::isfinite(boresight_azimuth))
            raise(ErrorCode::InvalidConfig, "BS position must be finite");
        if (!(position.z() > 0.0))
            raise(ErrorCode::InvalidConfig, "BS height must be > 0");
    }

    SamplingPlan sample_track(const Track &track, double stts_interval, double lttl_interval,
                              std::size_t lttl_count, std::size_t tau)
    {
        track.validate();
        if (tau == 0 || lttl_count == 0)
            raise(ErrorCode::InvalidInterval, "tau and lttl_count must be >= 1");
        if (!(stts_interval > 0.0) || !(lttl_interval > 0.0))
            raise(ErrorCode::InvalidInterval, "intervals must be positive");
        if (lttl_interval < static_cast<double>(tau) * stts_interval)
            raise(ErrorCode::InvalidInterval, "lttl_interval " + std::to_string(lttl_interval) +
                                                  " s is shorter than tau x stts_interval");

        const double span = static_cast<double>(lttl_count) * lttl_interval * track.speed;
        if (span > track.length * (1.0 + 1e-6))
            raise(ErrorCode::PlanExceedsTrack, "plan spans " + std::to_string(span) + " m on a " +
                                                   std::to_string(track.length) + " m track");

        SamplingPlan plan;
        plan.tau = tau;
        plan.anchors.resize(lttl_count);
        plan.distances.resize(lttl_count * tau);
        plan.positions.resize(3, static_cast<Eigen::Index>(lttl_count * tau));

        for (std::size_t k = 0; k < lttl_count; ++k)
        {
            const double anchor = static_cast<double>(k) * lttl_interval * track.speed;
            plan.anchors[k] = anchor;
            for (std::size_t j = 0; j < tau; ++j)
            {
                const std::size_t t = k * tau + j;
                const double d = anchor + static_cast<double>(j) * stts_interval * track.speed;
                plan.distances[t] = d;
                plan.positions.col(static_cast<Eigen::Index>(t)) = track.position_at(d);
            }
        }
        return plan;
    }

    double wrap_angle(double angle)
    {
        double a = std::remainder(angle, 2.0 * pi); // [-pi, pi]
        if (a <= -pi)
            a += 2.0 * pi;
        return a;
    }

    SphericalCoords relative_geometry(const BsConfig &bs, const Position3D &p)
    {
        const Position3D d = p - bs.position;
        const double range = d.norm();
        if (range == 0.0)
            raise(ErrorCode::CoincidentPoints, "point coincides with the BS position");

        SphericalCoords out;
        out.range = range;
        out.azimuth = wrap_angle(std::atan2(d.y(), d.x()) - bs.boresight_azimuth);
        out.elevation = std::asin(std::clamp(d.z() / range, -1.0, 1.0));
        return out;
    }
}
