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

#include "spatcon/covar.hpp"

#include <cmath>
#include <string>

#include "spatcon/error.hpp"
#include "spatcon/parallel.hpp"
#include "spatcon/random.hpp"

namespace spatcon
{
    std::vector<Window> segment(const ChannelTrace &trace) { return segment(trace, trace.header.tau); }

    std::vector<Window> segment(const ChannelTrace &trace, std::size_t tau)
    {
        trace.check_dimensions();
        const TraceHeader &h = trace.header;
        if (tau == 0 || tau > h.tau)
            raise(ErrorCode::MalformedTrace, "window of " + std::to_string(tau) + " STTS requested from a trace with tau = " +
                                                 std::to_string(h.tau));
        std::vector<Window> out;
        out.reserve(h.lttl_count);
        for (std::size_t k = 0; k < h.lttl_count; ++k)
            out.push_back({&trace, k, k * h.tau, tau, h.anchors[k]});
        return out;
    }

    std::vector<CovarianceMatrix> estimate_all(const std::vector<Window> &windows)
    {
        std::vector<CovarianceMatrix> out(windows.size());
        parallel_for(windows.size(), [&](std::size_t k) { out[k] = estimate(windows[k]); });
        return out;
    }

    CovarianceMatrix oracle_covariance(const ChannelGenerator &generator, const Position3D &position, double distance,
                                       const EvalConfig &cfg, std::size_t n_draws, std::uint64_t seed)
    {
        if (n_draws == 0)
            raise(ErrorCode::InvalidConfig, "n_draws must be >= 1");

        const std::vector<PathSample> paths = generator.paths(position, distance);
        if (paths.empty())
            raise(ErrorCode::NoActivePath, "no active path at the oracle position");

        const auto n_r = static_cast<Eigen::Index>(generator.manifold().size());
        const auto n_sc = static_cast<Eigen::Index>(cfg.n_subcarriers);
        const auto n_paths = static_cast<Eigen::Index>(paths.size());

        // columns: g_i a_i ; rows of `freq`: per-subcarrier delay phasors
        CMatrixXd steer(n_r, n_paths);
        CMatrixXd freq(n_paths, n_sc);
        for (Eigen::Index i = 0; i < n_paths; ++i)
        {
            const PathSample &p = paths[static_cast<std::size_t>(i)];
            steer.col(i) = p.gain * generator.manifold().steer(p.azimuth, p.elevation);
            for (Eigen::Index n = 0; n < n_sc; ++n)
                freq(i, n) = std::polar(1.0, -2.0 * pi * cfg.subcarrier_frequency(static_cast<std::size_t>(n)) * p.delay);
        }

        Rng rng(seed);
        CMatrixXd acc = CMatrixXd::Zero(n_r, n_r);
        CVectorXd phases(n_paths);
        for (std::size_t d = 0; d < n_draws; ++d)
        {
            for (Eigen::Index i = 0; i < n_paths; ++i)
                phases[i] = std::polar(1.0, rng.uniform(0.0, 2.0 * pi));
            const CMatrixXd h = steer * (phases.asDiagonal() * freq); // n_r x N
            acc.selfadjointView<Eigen::Lower>().rankUpdate(h, 1.0);
        }

        CovarianceMatrix out;
        out.sample_count = n_draws * cfg.n_subcarriers;
        const CMatrixXd lower = acc.triangularView<Eigen::Lower>();
        out.matrix = lower + lower.adjoint();
        out.matrix.diagonal() *= 0.5;
        out.matrix /= static_cast<double>(out.sample_count);
        return out;
    }

    CovarianceDiagnostics diagnose(const CovarianceMatrix &r)
    {
        CovarianceDiagnostics d{};
        const double norm = r.matrix.norm();
        d.hermitian_error = norm > 0.0 ? (r.matrix - r.matrix.adjoint()).norm() / norm : 0.0;
        d.trace = r.matrix.trace().real();
        const Eigen::SelfAdjointEigenSolver<CMatrixXd> eig(r.matrix, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd &ev = eig.eigenvalues();
        d.min_eigenvalue = d.trace > 0.0 ? ev.minCoeff() / d.trace : ev.minCoeff();
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev[i] > 1e-10 * d.trace)
                ++d.rank;
        return d;
    }
}
