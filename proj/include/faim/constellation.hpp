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

#include <span>
#include <vector>

#include "faim/types.hpp"

namespace faim
{
    // Gray-mapped square M-QAM (BPSK for M = 2) with unit average symbol energy.
    // Labels are the bit groups read most-significant bit first; the first half of
    // the label drives the in-phase axis, the second half the quadrature axis.
    // BPSK maps bit 0 to +1 and bit 1 to -1.
    class Constellation
    {
    public:
        explicit Constellation(int order);

        int order() const { return order_; }
        int bits_per_symbol() const { return bits_; }
        const std::vector<Complex> &points() const { return points_; }
        Complex point(unsigned label) const { return points_[label]; }

        unsigned label_of(std::span<const std::uint8_t> bits) const;
        void write_label(unsigned label, std::span<std::uint8_t> out) const;

        // Nearest point; equal distances resolve to the smallest label.
        unsigned slice(Complex z) const;

        double min_distance() const;

    private:
        int order_;
        int bits_;
        std::vector<Complex> points_;
    };

    // Shared instance for M in {2, 4, 16, 64}.
    const Constellation &constellation(int order);

    std::vector<Complex> qam_modulate(std::span<const std::uint8_t> bits, int order);
}
