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

#include <cmath>
#include <cstdint>
#include <random>

#include "spatcon/types.hpp"

namespace spatcon
{
    // Platform-independent random stream. std::mt19937_64 has a fully specified sequence;
    // the conversions below replace the implementation-defined std:: distributions.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(mix(seed, stream)) {}

        // [0, 1)
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        bool bernoulli(double p) { return uniform() < p; }

        double exponential(double mean) { return -mean * std::log1p(-uniform()); }

        double normal()
        {
            // Box-Muller, one variate per call
            const double u1 = 1.0 - uniform(); // (0, 1]
            const double u2 = uniform();
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
        }

        // Circularly symmetric complex Gaussian with E|z|^2 = 1.
        cd complex_normal()
        {
            const double re = normal();
            const double im = normal();
            return {re * std::sqrt(0.5), im * std::sqrt(0.5)};
        }

        // Poisson by inversion; fine for the small means used here.
        std::uint64_t poisson(double mean)
        {
            const double l = std::exp(-mean);
            std::uint64_t k = 0;
            double p = uniform();
            while (p > l)
            {
                ++k;
                p *= uniform();
            }
            return k;
        }

    private:
        static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream)
        {
            // splitmix64 finalizer over (seed, stream)
            std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

        std::mt19937_64 engine_;
    };
}
