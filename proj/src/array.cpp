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

#include "spatcon/array.hpp"

#include <algorithm>
#include <cmath>

#include "spatcon/error.hpp"
#include "spatcon/geometry.hpp"

namespace spatcon
{
    double ArrayConfig::default_radius(double carrier_frequency, std::size_t n_columns)
    {
        // adjacent columns half a wavelength apart (chord length)
        const double lambda = wavelength(carrier_frequency);
        if (n_columns < 2)
            return lambda / 2.0;
        return lambda / (4.0 * std::sin(pi / static_cast<double>(n_columns)));
    }

    ArrayConfig ArrayConfig::with_default_spacing(double carrier_frequency)
    {
        ArrayConfig cfg;
        cfg.carrier_frequency = carrier_frequency;
        cfg.radius = default_radius(carrier_frequency, cfg.n_columns);
        cfg.row_spacing = wavelength(carrier_frequency) / 2.0;
        return cfg;
    }

    void ArrayConfig::validate() const
    {
        if (n_columns == 0 || n_rows == 0 || n_polarizations == 0 || n_polarizations > 2)
            raise(ErrorCode::InvalidConfig, "array needs >= 1 column, >= 1 row and 1 or 2 polarizations");
        if (!(radius > 0.0) || !(row_spacing > 0.0))
            raise(ErrorCode::InvalidConfig, "array radius and row spacing must be > 0");
        if (!(carrier_frequency > 0.0))
            raise(ErrorCode::InvalidConfig, "carrier frequency must be > 0");
        if (!std::isfinite(xpol_leakage_db))
            raise(ErrorCode::InvalidConfig, "cross-polarization leakage must be finite");
    }

    void ElementPattern::validate() const
    {
        if (!(hpbw_azimuth > 0.0 && hpbw_azimuth < pi) || !(hpbw_elevation > 0.0 && hpbw_elevation < pi))
            raise(ErrorCode::InvalidConfig, "HPBW must lie in (0, 180) degrees");
        if (!(front_to_back_floor > 0.0 && front_to_back_floor < 1.0))
            raise(ErrorCode::InvalidConfig, "front-to-back floor must lie in (0, 1)");
    }

    std::vector<ArrayElement> element_layout(const ArrayConfig &cfg)
    {
        cfg.validate();
        std::vector<ArrayElement> out;
        out.reserve(cfg.n_r());
        const double z0 = 0.5 * static_cast<double>(cfg.n_rows - 1) * cfg.row_spacing;
        for (std::size_t m = 0; m < cfg.n_columns; ++m)
        {
            const double phi = 2.0 * pi * static_cast<double>(m) / static_cast<double>(cfg.n_columns);
            for (std::size_t r = 0; r < cfg.n_rows; ++r)
            {
                const Position3D pos(cfg.radius * std::cos(phi), cfg.radius * std::sin(phi),
                                     static_cast<double>(r) * cfg.row_spacing - z0);
                out.push_back({pos, phi, Polarization::V});
                if (cfg.n_polarizations == 2)
                    out.push_back({pos, phi, Polarization::H});
            }
        }
        return out;
    }

    double cosine_exponent(double hpbw)
    {
        return std::log(std::sqrt(0.5)) / std::log(std::cos(0.5 * hpbw));
    }

    namespace
    {
        inline double lobe(double delta, double q)
        {
            const double c = std::cos(delta);
            return c > 0.0 ? std::pow(c, q) : 0.0;
        }
    }

    double element_gain(const ElementPattern &pattern, double delta_az, double delta_el)
    {
        const double g = lobe(delta_az, cosine_exponent(pattern.hpbw_azimuth)) *
                         lobe(delta_el, cosine_exponent(pattern.hpbw_elevation));
        return std::max(g, std::sqrt(pattern.front_to_back_floor));
    }

    ArrayManifold::ArrayManifold(const ArrayConfig &cfg, const ElementPattern &pattern)
        : cfg_(cfg), pattern_(pattern), layout_(element_layout(cfg))
    {
        pattern.validate();
        wavenumber_ = 2.0 * pi / wavelength(cfg.carrier_frequency);
        qaz_ = cosine_exponent(pattern.hpbw_azimuth);
        qel_ = cosine_exponent(pattern.hpbw_elevation);
        floor_amplitude_ = std::sqrt(pattern.front_to_back_floor);
        leakage_ = std::pow(10.0, cfg.xpol_leakage_db / 20.0);
    }

    void ArrayManifold::steer_into(double azimuth, double elevation, Eigen::Ref<CVectorXd> out) const
    {
        const double ce = std::cos(elevation);
        const Eigen::Vector3d u(ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation));
        const double g_el = lobe(elevation, qel_);

        for (std::size_t i = 0; i < layout_.size(); ++i)
        {
            const ArrayElement &e = layout_[i];
            const double g = std::max(lobe(wrap_angle(azimuth - e.boresight_azimuth), qaz_) * g_el, floor_amplitude_);
            const double pol = e.polarization == Polarization::V ? 1.0 : leakage_;
            const double phase = -wavenumber_ * u.dot(e.position);
            out[static_cast<Eigen::Index>(i)] = std::polar(g * pol, phase);
        }
    }

    CVectorXd ArrayManifold::steer(double azimuth, double elevation) const
    {
        CVectorXd out(static_cast<Eigen::Index>(layout_.size()));
        steer_into(azimuth, elevation, out);
        return out;
    }

    CVectorXd steering_vector(const ArrayConfig &cfg, const ElementPattern &pattern, double azimuth,
                              double elevation)
    {
        return ArrayManifold(cfg, pattern).steer(azimuth, elevation);
    }
}
