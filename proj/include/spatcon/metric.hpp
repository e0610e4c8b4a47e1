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

#include <algorithm>
#include <cmath>
#include <string>

#include "spatcon/covar.hpp"
#include "spatcon/digest.hpp"
#include "spatcon/error.hpp"

namespace spatcon
{
    // CMD similarity in [0, 1]: 1 for collinear covariances, 0 for orthogonal ones.
    struct Similarity
    {
        double value = 0.0;
    };

    namespace detail
    {
        template <typename Derived>
        void check_hermitian_psd(const Eigen::MatrixBase<Derived> &r, double norm, const char *which)
        {
            using Real = typename Derived::RealScalar;
            const double asym = static_cast<double>((r - r.adjoint()).norm());
            if (asym > 1e-9 * norm)
                raise(ErrorCode::NotHermitian, std::string(which) + " is not Hermitian (relative asymmetry " +
                                                   format_double(asym / norm) + ")");
            const Real min_diag = r.diagonal().real().minCoeff();
            if (static_cast<double>(min_diag) < -1e-9 * norm)
                raise(ErrorCode::NotHermitian, std::string(which) + " has a negative diagonal entry, not PSD");
        }
    }

    // Tr(R1^H R2) / (||R1||_F ||R2||_F) for Hermitian PSD inputs of equal size.
    // Throws DimensionMismatch, ZeroMatrix, NotHermitian.
    template <typename Derived1, typename Derived2>
    Similarity cmd_similarity(const Eigen::MatrixBase<Derived1> &r1, const Eigen::MatrixBase<Derived2> &r2)
    {
        if (r1.rows() != r1.cols() || r2.rows() != r2.cols() || r1.rows() != r2.rows())
            raise(ErrorCode::DimensionMismatch, "covariances must be square and of equal size");

        const double dim = static_cast<double>(r1.rows());
        const double n1 = static_cast<double>(r1.norm());
        const double n2 = static_cast<double>(r2.norm());
        if (!(n1 > 1e-30 * dim) || !(n2 > 1e-30 * dim))
            raise(ErrorCode::ZeroMatrix, "covariance has (near) zero Frobenius norm");

        detail::check_hermitian_psd(r1, n1, "R1");
        detail::check_hermitian_psd(r2, n2, "R2");

        // Tr(A^H B) = sum_ij conj(A_ij) B_ij
        const std::complex<double> tr = r1.template cast<cd>().conjugate().cwiseProduct(r2.template cast<cd>()).sum();
        const double scale = n1 * n2;
        if (std::abs(tr.imag()) > 1e-9 * scale)
            raise(ErrorCode::NotHermitian, "trace inner product has a non-negligible imaginary part");

        double v = tr.real() / scale;
        if (v < -1e-9 || v > 1.0 + 1e-9)
            raise(ErrorCode::NotHermitian, "similarity " + format_double(v) + " outside [0, 1], inputs are not PSD");
        return {std::clamp(v, 0.0, 1.0)};
    }

    template <typename Scalar>
    Similarity cmd_similarity(const Covariance<Scalar> &r1, const Covariance<Scalar> &r2)
    {
        return cmd_similarity(r1.matrix, r2.matrix);
    }
}
