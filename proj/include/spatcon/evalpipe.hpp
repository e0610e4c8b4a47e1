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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spatcon/covar.hpp"
#include "spatcon/metric.hpp"
#include "spatcon/synth.hpp"

namespace spatcon
{
    struct CurveSample
    {
        double distance; // m from the first LTTS
        double value;    // CMD similarity to the first LTTS
    };

    struct SimilarityCurve
    {
        std::string track_id;
        std::vector<CurveSample> samples;
        std::optional<std::string> ground_truth; // generating preset, when known

        std::size_t size() const { return samples.size(); }
        double span() const { return samples.empty() ? 0.0 : samples.back().distance; }
    };

    // Similarity of every LTTS to the first one. Metric errors are rethrown naming the LTTS index.
    SimilarityCurve similarity_curve(const std::vector<CovarianceMatrix> &covariances, const std::vector<double> &anchors,
                                     std::string track_id = {});

    // segment -> estimate -> similarity_curve. tau = 0 uses the trace's own window length.
    SimilarityCurve evaluate_trace(const ChannelTrace &trace, std::string track_id = {}, std::size_t tau = 0);

    double area_under_curve(const SimilarityCurve &curve);

    // Indices of the curves with the largest and the smallest area.
    std::array<std::size_t, 2> extremal_representatives(const std::vector<SimilarityCurve> &curves);

    struct ClassEnvelope
    {
        std::string label;
        std::vector<double> distances; // taken from the first member
        std::vector<double> min;
        std::vector<double> max;
        std::array<std::size_t, 2> representatives{};
    };

    // Pointwise min/max. Throws RaggedCurves when sample counts differ.
    ClassEnvelope class_envelope(const std::vector<SimilarityCurve> &curves,
                                 std::optional<std::array<std::size_t, 2>> representatives = std::nullopt,
                                 std::string label = {});

    // Cuts every curve to the shortest member so an envelope can be drawn.
    std::vector<SimilarityCurve> truncate_to_shortest(std::vector<SimilarityCurve> curves);
}
