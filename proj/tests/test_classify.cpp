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

#include "spatcon/classify.hpp"
#include "spatcon/error.hpp"

using namespace spatcon;
using Catch::Matchers::WithinAbs;

namespace
{
    template <typename F>
    SimilarityCurve curve_of(F f, std::size_t count = 120, double step = 0.33)
    {
        SimilarityCurve c;
        c.track_id = "c";
        for (std::size_t k = 0; k < count; ++k)
        {
            const double d = step * static_cast<double>(k);
            c.samples.push_back({d, k == 0 ? 1.0 : f(d)});
        }
        return c;
    }

    const Predicate *find(const ClassLabel &l, const std::string &name)
    {
        for (const Predicate &p : l.trace)
            if (p.name == name)
                return &p;
        return nullptr;
    }
}

TEST_CASE("flat curve is far away", "[classify]")
{
    const ClassLabel l = classify_curve(curve_of([](double) { return 0.9; }));
    CHECK(l.label == TrackClass::FarAway);
    REQUIRE(find(l, "range") != nullptr);
    CHECK(find(l, "range")->passed);
}

TEST_CASE("linear decrease to 0.1 over 39 m is tangential", "[classify]")
{
    const SimilarityCurve c = curve_of([](double d) { return 1.0 - 0.9 * d / 39.0; }, 119, 39.0 / 118.0);
    const ClassLabel l = classify_curve(c);
    CHECK(l.label == TrackClass::LoSTangential);
    // the radial rule sees a high value at 20 m but rejects the low end point
    REQUIRE(find(l, "final_above_tangential_max") != nullptr);
    CHECK_FALSE(find(l, "final_above_tangential_max")->passed);
}

TEST_CASE("slow decrease that stays high is radial", "[classify]")
{
    const ClassLabel l = classify_curve(curve_of([](double d) { return 1.0 - 0.012 * d; }));
    CHECK(l.label == TrackClass::LoSRadial);
}

TEST_CASE("early collapse is uncorrelated", "[classify]")
{
    const ClassLabel l = classify_curve(curve_of([](double d) { return d < 1.0 ? 0.6 : 0.15; }));
    CHECK(l.label == TrackClass::Uncorrelated);
    CHECK(l.trace.size() == 2);
}

TEST_CASE("early dip with recovery falls through to the other rules", "[classify]")
{
    const ClassLabel l = classify_curve(curve_of([](double d) { return d < 1.0 ? 0.3 : 0.8; }));
    CHECK(l.label != TrackClass::Uncorrelated);
    CHECK_FALSE(find(l, "median_rest")->passed);
}

TEST_CASE("curves that match no rule are Other", "[classify]")
{
    // rising curve
    CHECK(classify_curve(curve_of([](double d) { return 0.3 + 0.015 * d; })).label == TrackClass::Other);
    // short curve: past the uncorrelated window but below the radial distance
    const SimilarityCurve short_curve = curve_of([](double d) { return 1.0 - 0.05 * d; }, 30);
    const ClassLabel l = classify_curve(short_curve);
    CHECK(l.label == TrackClass::Other);
    CHECK(find(l, "span") != nullptr);
}

TEST_CASE("too short curves are rejected", "[classify]")
{
    try
    {
        classify_curve(curve_of([](double) { return 1.0; }, 4));
        FAIL("expected CurveTooShort");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::CurveTooShort);
    }
}

TEST_CASE("rule trace lists every evaluated predicate", "[classify]")
{
    const ClassLabel l = classify_curve(curve_of([](double d) { return 1.0 - 0.012 * d; }));
    const std::string text = l.rule_trace();
    CHECK(text.find("early_min=") == 0);
    CHECK(text.find("-> LoSRadial") != std::string::npos);
    CHECK(text.find(',') == std::string::npos);
    for (const Predicate &p : l.trace)
        CHECK(text.find(p.name + "=") != std::string::npos);
}

TEST_CASE("raising a class level never removes members of that class", "[classify]")
{
    std::vector<SimilarityCurve> curves;
    for (int i = 0; i < 40; ++i)
    {
        const double a = 0.05 + 0.02 * i;
        const double b = 0.002 * (i % 7);
        curves.push_back(curve_of([=](double d) { return std::clamp(1.0 - a + b * d * std::sin(d + i), 0.0, 1.0); }));
    }
    ClassThresholds loose;
    loose.flat_range_max = 0.45;
    loose.uncorrelated_level = 0.6;
    for (const SimilarityCurve &c : curves)
    {
        const TrackClass strict_label = classify_curve(c).label;
        const TrackClass loose_label = classify_curve(c, loose).label;
        if (strict_label == TrackClass::Uncorrelated)
            CHECK(loose_label == TrackClass::Uncorrelated);
        if (strict_label == TrackClass::FarAway)
            CHECK((loose_label == TrackClass::FarAway || loose_label == TrackClass::Uncorrelated));
    }
}

TEST_CASE("helpers", "[classify]")
{
    const SimilarityCurve c = curve_of([](double d) { return 1.0 - 0.01 * d; }, 50, 1.0);
    CHECK_THAT(least_squares_slope(c.samples), WithinAbs(-0.01, 1e-12));
    CHECK_THAT(value_at(c, 20.5), WithinAbs(1.0 - 0.205, 1e-12));
    CHECK(value_at(c, 1e3) == c.samples.back().value);
    CHECK(value_at(c, -1.0) == 1.0);
}

TEST_CASE("class names and preset mapping", "[classify]")
{
    for (const TrackClass c : all_track_classes)
        CHECK(parse_track_class(to_string(c)) == c);
    CHECK(expected_class("los_radial") == TrackClass::LoSRadial);
    CHECK(expected_class("los_tangential") == TrackClass::LoSTangential);
    CHECK(expected_class("far_away") == TrackClass::FarAway);
    CHECK(expected_class("nlos_uncorrelated") == TrackClass::Uncorrelated);
    CHECK_FALSE(expected_class("mystery").has_value());
}

TEST_CASE("threshold validation", "[classify]")
{
    ClassThresholds th;
    th.radial_level = 1.5;
    CHECK_THROWS_AS(th.validate(), Error);
    th = {};
    th.trend_slope_min = 0.0;
    CHECK_THROWS_AS(th.validate(), Error);
}

TEST_CASE("classification report", "[classify]")
{
    SECTION("empty input")
    {
        const ClassificationReport r = classification_report({});
        CHECK(r.total() == 0);
        CHECK(r.with_truth == 0);
        CHECK(r.accuracy() == 0.0);
        for (const auto &row : r.confusion)
            for (const std::size_t v : row)
                CHECK(v == 0);
    }
    SECTION("all correct gives a diagonal table")
    {
        std::vector<LabeledCurve> labels;
        const char *presets[] = {"los_radial", "los_tangential", "far_away", "nlos_uncorrelated"};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 3; ++k)
            {
                ClassLabel l;
                l.label = all_track_classes[static_cast<std::size_t>(i)];
                labels.push_back({"t", l, std::string(presets[i])});
            }
        const ClassificationReport r = classification_report(labels);
        CHECK(r.accuracy() == 1.0);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(r.confusion[i][j] == (i == j && i < 4 ? 3u : 0u));
    }
    SECTION("curves without truth are counted but not scored")
    {
        ClassLabel l;
        l.label = TrackClass::FarAway;
        const ClassificationReport r =
            classification_report({{"a", l, std::nullopt}, {"b", l, std::string("los_radial")}});
        CHECK(r.total() == 2);
        CHECK(r.with_truth == 1);
        CHECK(r.correct == 0);
        CHECK(r.confusion[0][2] == 1);
    }
}
