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

namespace spatcon
{
    // Processing parameters of the covariance pipeline. Defaults follow the measurement campaign.
    struct EvalConfig
    {
        std::size_t tau = 10;              // STTS per covariance window
        std::size_t n_subcarriers = 100;   // N
        double stts_interval = 1.08e-3;    // s
        double lttl_interval = 0.66;       // s
        std::size_t lttl_count = 120;
        double carrier_frequency = 3.675e9;  // Hz
        double subcarrier_spacing = 180e3;   // Hz

        double bandwidth() const { return static_cast<double>(n_subcarriers) * subcarrier_spacing; }
        std::size_t stts_count() const { return lttl_count * tau; }

        // Frequency of subcarrier n, centered on the carrier.
        double subcarrier_frequency(std::size_t n) const
        {
            return carrier_frequency +
                   (static_cast<double>(n) - 0.5 * static_cast<double>(n_subcarriers - 1)) * subcarrier_spacing;
        }

        // Throws InvalidInterval / InvalidConfig.
        void validate() const;

        bool operator==(const EvalConfig &) const = default;
    };
}
