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

// Shared fixtures for the unit tests.

#pragma once

#include <atomic>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "spatcon/random.hpp"
#include "spatcon/synth.hpp"
#include "spatcon/types.hpp"

namespace spatcon::test
{
    // Random Hermitian PSD matrix G G^H with G of size n x rank.
    inline CMatrixXd random_psd(Eigen::Index n, Eigen::Index rank, Rng &rng)
    {
        CMatrixXd g(n, rank);
        for (Eigen::Index j = 0; j < rank; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                g(i, j) = rng.complex_normal();
        return g * g.adjoint();
    }

    inline CMatrixXd random_unitary(Eigen::Index n, Rng &rng)
    {
        CMatrixXd a(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                a(i, j) = rng.complex_normal();
        return Eigen::HouseholderQR<CMatrixXd>(a).householderQ();
    }

    // Trace whose coefficients do not change over time: every STTS repeats the same n_r x N block.
    inline ChannelTrace stationary_trace(std::size_t n_r, std::size_t n_sub, std::size_t lttl_count, std::size_t tau,
                                         std::uint64_t seed = 1)
    {
        ChannelTrace trace;
        TraceHeader &h = trace.header;
        h.n_r = n_r;
        h.n_subcarriers = n_sub;
        h.tau = tau;
        h.lttl_count = lttl_count;
        h.stts_count = lttl_count * tau;
        h.stts_interval = 1.08e-3;
        h.lttl_interval = 0.66;
        h.carrier_frequency = 3.675e9;
        h.subcarrier_spacing = 180e3;
        for (std::size_t k = 0; k < lttl_count; ++k)
            h.anchors.push_back(0.33 * static_cast<double>(k));
        h.scenario.hash = "stationary";

        Rng rng(seed);
        std::vector<cf> block(n_r * n_sub);
        for (cf &v : block)
        {
            const cd z = rng.complex_normal();
            v = cf(static_cast<float>(z.real()), static_cast<float>(z.imag()));
        }
        for (std::size_t t = 0; t < h.stts_count; ++t)
            trace.data.insert(trace.data.end(), block.begin(), block.end());
        return trace;
    }

    // Fresh directory under the system temp path, removed on destruction.
    class TempDir
    {
    public:
        TempDir()
        {
            static std::atomic<int> counter{0};
            path_ = std::filesystem::temp_directory_path() /
                    ("spatcon-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
            std::filesystem::create_directories(path_);
        }
        ~TempDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        TempDir(const TempDir &) = delete;
        TempDir &operator=(const TempDir &) = delete;

        std::string file(const std::string &name) const { return (path_ / name).string(); }

    private:
        std::filesystem::path path_;
    };
}
