// SPDX-License-Identifier: Apache-2.0
//
// faim: link-level simulation library for fluid-antenna index-modulation MIMO
// Copyright (C) 2026 The faim authors
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
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace faim
{
    using Complex = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;

    // One bit per element, values 0 or 1.
    using Bits = std::vector<std::uint8_t>;

    // Linear grid indices (0-based, strictly increasing) occupied by the transmit antennas.
    using Pattern = std::vector<int>;

    using Rng = std::mt19937_64;

    // A configured safety limit was exceeded (search-space size, enumeration size).
    class GuardError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Sigma_y could not be inverted reliably.
    class ConditioningError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    constexpr double pi = 3.14159265358979323846;
}
