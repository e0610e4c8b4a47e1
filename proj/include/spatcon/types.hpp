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

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace spatcon
{
    using Position3D = Eigen::Vector3d;
    using Vector2D = Eigen::Vector2d;

    using cd = std::complex<double>;
    using cf = std::complex<float>;

    template <typename Scalar>
    using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
    template <typename Scalar>
    using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

    using CMatrixXd = CMatrix<double>;
    using CVectorXd = CVector<double>;

    inline constexpr double speed_of_light = 299792458.0;
    inline constexpr double pi = std::numbers::pi;

    inline constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

    inline double wavelength(double frequency_hz) { return speed_of_light / frequency_hz; }
}
