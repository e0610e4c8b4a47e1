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

#include "spatcon/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spatcon/digest.hpp"
#include "spatcon/error.hpp"

namespace spatcon
{
    void ClassThresholds::validate() const
    {
        for (const double level : {uncorrelated_level, radial_level, tangential_end_max, flat_range_max})
            if (!(level > 0.0 && level < 1.0))
                raise(ErrorCode::InvalidConfig, "threshold levels must lie in (0, 1)");
        if (!(uncorrelated_within_m > 0.0) || !(radial_at_m > 0.0) || !(trend_slope_min > 0.0))
            raise(ErrorCode::InvalidConfig, "threshold distances and slope must be positive");
    }

    std::string_view to_string(TrackClass c)
    {
        switch (c)
        {
        case TrackClass::LoSRadial: return "LoSRadial";
        case TrackClass::LoSTangential: return "LoSTangential";
        case TrackClass::FarAway: return "FarAway";
        case TrackClass::Uncorrelated: return "Uncorrelated";
        case TrackClass::Other: return "Other";
        }
        return "Other";
    }

    std::optional<TrackClass> parse_track_class(std::string_view name)
    {
        for (const TrackClass c : all_track_classes)
            if (to_string(c) == name)
                return c;
        return std::nullopt;
    }

    std::optional<TrackClass> expected_class(std::string_view preset)
    {
        if (preset == "los_radial")
            return TrackClass::LoSRadial;
        if (preset == "los_tangential")
            return TrackClass::LoSTangential;
        if (preset == "far_away")
            return TrackClass::FarAway;
        if (preset == "nlos_uncorrelated")
            return TrackClass::Uncorrelated;
        return parse_track_class(preset);
    }

    std::string ClassLabel::rule_trace() const
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < trace.size(); ++i)
        {
            const Predicate &p = trace[i];
            if (i > 0)
                os << "; ";
            os << p.name << '=' << format_fixed(p.value, 4) << (p.passed ? " pass" : " fail") << " (th "
               << format_fixed(p.threshold, 4) << ')';
        }
        os << " -> " << to_string(label);
        return os.str();
    }

    double least_squares_slope(const std::vector<CurveSample> &samples)
    {
        const double n = static_cast<double>(samples.size());
        if (samples.size() < 2)
            return 0.0;
        double mx = 0.0, my = 0.0;
        for (const CurveSample &s : samples)
        {
            mx += s.distance;
            my += s.value;
        }
        mx /= n;
        my /= n;
        double sxy = 0.0, sxx = 0.0;
        for (const CurveSample &s : samples)
        {
            sxy += (s.distance - mx) * (s.value - my);
            sxx += (s.distance - mx) * (s.distance - mx);
        }
        return sxx > 0.0 ? sxy / sxx : 0.0;
    }

    double value_at(const SimilarityCurve &curve, double distance)
    {
        const std::vector<CurveSample> &s = curve.samples;
        if (s.empty())
            return 0.0;
        if (distance <= s.front().distance)
            return s.front().value;
        for (std::size_t k = 1; k < s.size(); ++k)
        {
            if (s[k].distance >= distance)
            {
                const double w = (distance - s[k - 1].distance) / (s[k].distance - s[k - 1].distance);
                return s[k - 1].value + w * (s[k].value - s[k - 1].value);
            }
        }
        return s.back().value;
    }

    namespace
    {
        double median(std::vector<double> v)
        {
            if (v.empty())
                return 0.0;
            const std::size_t mid = v.size() / 2;
            std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
            double m = v[mid];
            if (v.size() % 2 == 0)
                m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
            return m;
        }
    }

    ClassLabel classify_curve(const SimilarityCurve &curve, const ClassThresholds &th)
    {
        th.validate();
        if (curve.size() < 2 || curve.span() < th.uncorrelated_within_m)
            raise(ErrorCode::CurveTooShort, "curve '" + curve.track_id + "' spans " + format_double(curve.span()) +
                                                " m, less than " + format_double(th.uncorrelated_within_m) + " m");

        ClassLabel out;
        const auto check = [&](std::string name, double value, double threshold, bool passed) {
            out.trace.push_back({std::move(name), value, threshold, passed});
            return passed;
        };

        // (1) Uncorrelated: early drop and low afterwards
        double early_min = 1.0;
        std::vector<double> rest;
        for (const CurveSample &s : curve.samples)
        {
            if (s.distance <= th.uncorrelated_within_m)
                early_min = std::min(early_min, s.value);
            else
                rest.push_back(s.value);
        }
        const bool early = check("early_min", early_min, th.uncorrelated_level, early_min < th.uncorrelated_level);
        if (early)
        {
            const double med = median(rest);
            if (check("median_rest", med, th.uncorrelated_level, med < th.uncorrelated_level))
            {
                out.label = TrackClass::Uncorrelated;
                return out;
            }
        }

        if (curve.span() < th.radial_at_m)
        {
            check("span", curve.span(), th.radial_at_m, false);
            out.label = TrackClass::Other;
            return out;
        }

        const std::vector<CurveSample> body(curve.samples.begin() + 1, curve.samples.end());
        double lo = body.front().value, hi = body.front().value;
        for (const CurveSample &s : body)
        {
            lo = std::min(lo, s.value);
            hi = std::max(hi, s.value);
        }
        const double slope = least_squares_slope(body);
        const double final_value = curve.samples.back().value;

        // (2) FarAway: flat and trendless
        if (check("range", hi - lo, th.flat_range_max, hi - lo <= th.flat_range_max) &&
            check("abs_slope", std::abs(slope), th.trend_slope_min, std::abs(slope) < th.trend_slope_min))
        {
            out.label = TrackClass::FarAway;
            return out;
        }

        // (3) LoSRadial: high at radial_at_m, decreasing, not ending near zero
        const double at = value_at(curve, th.radial_at_m);
        if (check("value_at_radial_m", at, th.radial_level, at >= th.radial_level) &&
            check("slope_negative", slope, 0.0, slope < 0.0) &&
            check("final_above_tangential_max", final_value, th.tangential_end_max, final_value > th.tangential_end_max))
        {
            out.label = TrackClass::LoSRadial;
            return out;
        }

        // (4) LoSTangential: steady decrease to a low final value
        if (check("slope", slope, -th.trend_slope_min, slope < -th.trend_slope_min) &&
            check("final", final_value, th.tangential_end_max, final_value <= th.tangential_end_max))
        {
            out.label = TrackClass::LoSTangential;
            return out;
        }

        out.label = TrackClass::Other;
        return out;
    }

    std::size_t ClassificationReport::total() const
    {
        std::size_t n = 0;
        for (const std::size_t c : counts)
            n += c;
        return n;
    }

    ClassificationReport classification_report(const std::vector<LabeledCurve> &labels)
    {
        ClassificationReport r;
        for (const LabeledCurve &l : labels)
        {
            const auto col = static_cast<std::size_t>(l.label.label);
            ++r.counts[col];
            if (!l.ground_truth)
                continue;
            const std::optional<TrackClass> truth = expected_class(*l.ground_truth);
            const std::size_t row = truth ? static_cast<std::size_t>(*truth) : static_cast<std::size_t>(TrackClass::Other);
            ++r.confusion[row][col];
            ++r.with_truth;
            if (row == col)
                ++r.correct;
        }
        return r;
    }
}
