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
#include <cstdint>
#include <vector>

#include "spatcon/synth.hpp"
#include "spatcon/types.hpp"

namespace spatcon
{
    // Receive covariance with the number of snapshots that were averaged.
    template <typename Scalar>
    struct Covariance
    {
        CMatrix<Scalar> matrix;
        std::size_t sample_count = 0;

        Eigen::Index dim() const { return matrix.rows(); }
    };

    using CovarianceMatrix = Covariance<double>;

    // First tau STTS of one LTTS.
    struct Window
    {
        const ChannelTrace *trace = nullptr;
        std::size_t index = 0;      // LTTS index
        std::size_t first_stts = 0; // inclusive
        std::size_t tau = 0;
        double anchor = 0.0; // m

        // n_r x (tau * N), one column per H_{t,n}.
        Eigen::Map<const CMatrix<float>> snapshots() const { return trace->block(first_stts, tau); }
    };

    // Throws MalformedTrace.
    std::vector<Window> segment(const ChannelTrace &trace);

    // Uses the first `tau` STTS of every LTTS (tau <= trace tau); enables tau sweeps on one trace.
    std::vector<Window> segment(const ChannelTrace &trace, std::size_t tau);

    // R = 1/(tau N) sum_t sum_n H_{t,n} H_{t,n}^H, accumulated in double, then symmetrized.
    // Columns of `snapshots` are the H_{t,n}.
    template <typename Derived>
    CovarianceMatrix estimate(const Eigen::MatrixBase<Derived> &snapshots)
    {
        const Eigen::Index n_r = snapshots.rows();
        const Eigen::Index count = snapshots.cols();
        CovarianceMatrix out;
        out.sample_count = static_cast<std::size_t>(count);
        out.matrix = CMatrixXd::Zero(n_r, n_r);
        if (count == 0)
            return out;

        const CMatrixXd x = snapshots.template cast<cd>();
        out.matrix.template selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / static_cast<double>(count));
        // (R + R^H) / 2 from the accumulated lower triangle
        const CMatrixXd lower = out.matrix.template triangularView<Eigen::Lower>();
        out.matrix = lower + lower.adjoint();
        out.matrix.diagonal() *= 0.5;
        return out;
    }

    inline CovarianceMatrix estimate(const Window &window) { return estimate(window.snapshots()); }

    // One covariance per window, evaluated in parallel.
    std::vector<CovarianceMatrix> estimate_all(const std::vector<Window> &windows);

    // Empirical E[H H^H] at a fixed transmitter position, averaging over n_draws independent
    // uniform phase randomizations of every path and over all subcarriers.
    CovarianceMatrix oracle_covariance(const ChannelGenerator &generator, const Position3D &position, double distance,
                                       const EvalConfig &cfg, std::size_t n_draws, std::uint64_t seed);

    struct CovarianceDiagnostics
    {
        double hermitian_error;  // ||R - R^H||_F / ||R||_F
        double min_eigenvalue;   // relative to trace
        std::size_t rank;        // eigenvalues above 1e-10 x trace
        double trace;
    };

    CovarianceDiagnostics diagnose(const CovarianceMatrix &r);
}
