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
#include <string_view>
#include <vector>

#include "spatcon/evalpipe.hpp"

namespace spatcon
{
    struct ClassThresholds
    {
        double uncorrelated_level = 0.4;
        double uncorrelated_within_m = 2.0; // about six LTTS
        double radial_level = 0.5;
        double radial_at_m = 20.0;
        double tangential_end_max = 0.2;
        double flat_range_max = 0.25;
        double trend_slope_min = 0.005; // per meter

        void validate() const;
        bool operator==(const ClassThresholds &) const = default;
    };

    enum class TrackClass
    {
        LoSRadial,
        LoSTangential,
        FarAway,
        Uncorrelated,
        Other
    };

    inline constexpr std::array<TrackClass, 5> all_track_classes{TrackClass::LoSRadial, TrackClass::LoSTangential,
                                                                 TrackClass::FarAway, TrackClass::Uncorrelated,
                                                                 TrackClass::Other};

    std::string_view to_string(TrackClass c);
    std::optional<TrackClass> parse_track_class(std::string_view name);

    // Class a generating preset is expected to produce.
    std::optional<TrackClass> expected_class(std::string_view preset);

    struct Predicate
    {
        std::string name;
        double value;
        double threshold;
        bool passed;
    };

    struct ClassLabel
    {
        TrackClass label = TrackClass::Other;
        std::vector<Predicate> trace; // predicates in evaluation order

        std::string rule_trace() const;
    };

    // Fixed precedence: Uncorrelated, FarAway, LoSRadial, LoSTangential, Other.
    // Throws CurveTooShort when the curve spans less than uncorrelated_within_m.
    ClassLabel classify_curve(const SimilarityCurve &curve, const ClassThresholds &th = {});

    struct LabeledCurve
    {
        std::string track_id;
        ClassLabel label;
        std::optional<std::string> ground_truth; // preset name
    };

    struct ClassificationReport
    {
        std::array<std::size_t, 5> counts{};
        // rows: ground-truth class (curves without ground truth are not tabulated), cols: label
        std::array<std::array<std::size_t, 5>, 5> confusion{};
        std::size_t with_truth = 0;
        std::size_t correct = 0;

        double accuracy() const { return with_truth == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(with_truth); }
        std::size_t total() const;
    };

    ClassificationReport classification_report(const std::vector<LabeledCurve> &labels);

    // Helpers exposed for tests.
    double least_squares_slope(const std::vector<CurveSample> &samples);
    double value_at(const SimilarityCurve &curve, double distance);
}
