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
    enum class Polarization
    {
        V,
        H
    };

    // Uniform cylindrical array: n_columns on a circle, n_rows stacked, n_polarizations per position.
    // Elements are ordered column-major: column, then row, then polarization (V before H).
    struct ArrayConfig
    {
        std::size_t n_columns = 16;
        std::size_t n_rows = 4;
        std::size_t n_polarizations = 2;
        double carrier_frequency = 3.675e9;
        double radius = default_radius(3.675e9, 16);           // m
        double row_spacing = wavelength(3.675e9) / 2.0;        // m
        double xpol_leakage_db = -20.0; // amplitude of H elements for a vertically polarized wave

        std::size_t n_r() const { return n_columns * n_rows * n_polarizations; }
        void validate() const;

        // Half-wavelength column chord and half-wavelength row spacing at the carrier.
        static ArrayConfig with_default_spacing(double carrier_frequency = 3.675e9);
        static double default_radius(double carrier_frequency, std::size_t n_columns);

        bool operator==(const ArrayConfig &) const = default;
    };

    // Separable cosine-power pattern. The exponent places the -3 dB point at hpbw/2.
    struct ElementPattern
    {
        double hpbw_azimuth = deg2rad(65.0);
        double hpbw_elevation = deg2rad(65.0);
        double front_to_back_floor = 0.01; // power ratio

        void validate() const;

        bool operator==(const ElementPattern &) const = default;
    };

    struct ArrayElement
    {
        Position3D position;       // relative to the array center
        double boresight_azimuth;  // rad, radially outward
        Polarization polarization;
    };

    std::vector<ArrayElement> element_layout(const ArrayConfig &cfg);

    // Exponent q with cos(hpbw/2)^q = sqrt(1/2).
    double cosine_exponent(double hpbw);

    double element_gain(const ElementPattern &pattern, double delta_az, double delta_el);

    CVectorXd steering_vector(const ArrayConfig &cfg, const ElementPattern &pattern, double azimuth,
                              double elevation);

    // Precomputed layout for repeated steering evaluation.
    class ArrayManifold
    {
    public:
        ArrayManifold(const ArrayConfig &cfg, const ElementPattern &pattern);

        std::size_t size() const { return layout_.size(); }
        const std::vector<ArrayElement> &layout() const { return layout_; }

        CVectorXd steer(double azimuth, double elevation) const;
        void steer_into(double azimuth, double elevation, Eigen::Ref<CVectorXd> out) const;

    private:
        ArrayConfig cfg_;
        ElementPattern pattern_;
        std::vector<ArrayElement> layout_;
        double wavenumber_;
        double qaz_;
        double qel_;
        double floor_amplitude_;
        double leakage_;
    };
}
