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

#include "spatcon/evalpipe.hpp"

#include <algorithm>
#include <limits>

#include "spatcon/error.hpp"
#include "spatcon/parallel.hpp"

namespace spatcon
{
    SimilarityCurve similarity_curve(const std::vector<CovarianceMatrix> &covariances, const std::vector<double> &anchors,
                                     std::string track_id)
    {
        if (covariances.size() < 2)
            raise(ErrorCode::InvalidConfig, "a similarity curve needs at least two covariances");
        if (anchors.size() != covariances.size())
            raise(ErrorCode::DimensionMismatch, "anchor count does not match covariance count");

        SimilarityCurve curve;
        curve.track_id = std::move(track_id);
        curve.samples.resize(covariances.size());
        parallel_for(covariances.size(), [&](std::size_t k) {
            try
            {
                curve.samples[k] = {anchors[k] - anchors[0], cmd_similarity(covariances[0], covariances[k]).value};
            }
            catch (const Error &e)
            {
                raise(e.code(), "LTTS " + std::to_string(k) + ": " + e.what());
            }
        });
        return curve;
    }

    SimilarityCurve evaluate_trace(const ChannelTrace &trace, std::string track_id, std::size_t tau)
    {
        const std::vector<Window> windows = tau == 0 ? segment(trace) : segment(trace, tau);
        const std::vector<CovarianceMatrix> covs = estimate_all(windows);
        SimilarityCurve curve = similarity_curve(covs, trace.header.anchors, std::move(track_id));
        if (!trace.header.scenario.preset.empty())
            curve.ground_truth = trace.header.scenario.preset;
        return curve;
    }

    double area_under_curve(const SimilarityCurve &curve)
    {
        double area = 0.0;
        for (std::size_t k = 1; k < curve.samples.size(); ++k)
        {
            const CurveSample &a = curve.samples[k - 1];
            const CurveSample &b = curve.samples[k];
            area += 0.5 * (a.value + b.value) * (b.distance - a.distance);
        }
        return area;
    }

    std::array<std::size_t, 2> extremal_representatives(const std::vector<SimilarityCurve> &curves)
    {
        std::array<std::size_t, 2> rep{0, 0};
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < curves.size(); ++i)
        {
            const double a = area_under_curve(curves[i]);
            if (a > hi)
            {
                hi = a;
                rep[0] = i;
            }
            if (a < lo)
            {
                lo = a;
                rep[1] = i;
            }
        }
        return rep;
    }

    ClassEnvelope class_envelope(const std::vector<SimilarityCurve> &curves,
                                 std::optional<std::array<std::size_t, 2>> representatives, std::string label)
    {
        if (curves.empty())
            raise(ErrorCode::InvalidConfig, "an envelope needs at least one curve");
        const std::size_t n = curves.front().size();
        for (const SimilarityCurve &c : curves)
            if (c.size() != n)
                raise(ErrorCode::RaggedCurves, "curve '" + c.track_id + "' has " + std::to_string(c.size()) +
                                                   " samples, expected " + std::to_string(n));

        ClassEnvelope env;
        env.label = std::move(label);
        env.distances.resize(n);
        env.min.assign(n, std::numeric_limits<double>::infinity());
        env.max.assign(n, -std::numeric_limits<double>::infinity());
        for (std::size_t k = 0; k < n; ++k)
        {
            env.distances[k] = curves.front().samples[k].distance;
            for (const SimilarityCurve &c : curves)
            {
                env.min[k] = std::min(env.min[k], c.samples[k].value);
                env.max[k] = std::max(env.max[k], c.samples[k].value);
            }
        }

        env.representatives = representatives.value_or(extremal_representatives(curves));
        for (const std::size_t r : env.representatives)
            if (r >= curves.size())
                raise(ErrorCode::InvalidConfig, "representative index " + std::to_string(r) + " out of range");
        return env;
    }

    std::vector<SimilarityCurve> truncate_to_shortest(std::vector<SimilarityCurve> curves)
    {
        std::size_t n = std::numeric_limits<std::size_t>::max();
        for (const SimilarityCurve &c : curves)
            n = std::min(n, c.size());
        for (SimilarityCurve &c : curves)
            c.samples.resize(n);
        return curves;
    }
}
