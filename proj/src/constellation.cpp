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

#include "faim/constellation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace faim
{
    namespace
    {
        // Gray label -> PAM level index, amplitude = (levels - 1 - 2 * index).
        int gray_to_index(unsigned g)
        {
            unsigned b = g;
            for (unsigned s = g >> 1; s != 0; s >>= 1)
                b ^= s;
            return static_cast<int>(b);
        }

        double pam_amplitude(unsigned gray_label, int levels)
        {
            return static_cast<double>(levels - 1 - 2 * gray_to_index(gray_label));
        }
    }

    Constellation::Constellation(int order) : order_(order), bits_(0)
    {
        if (order != 2 && order != 4 && order != 16 && order != 64)
            throw std::invalid_argument("unsupported modulation order " + std::to_string(order));
        while ((1 << bits_) < order)
            ++bits_;

        points_.resize(static_cast<std::size_t>(order));
        if (order == 2)
        {
            points_[0] = {1.0, 0.0};
            points_[1] = {-1.0, 0.0};
            return;
        }
        const int half = bits_ / 2;
        const int levels = 1 << half;
        const double scale = std::sqrt(2.0 * (order - 1) / 3.0);
        for (unsigned label = 0; label < static_cast<unsigned>(order); ++label)
        {
            const unsigned i_bits = label >> half;
            const unsigned q_bits = label & ((1u << half) - 1u);
            points_[label] = Complex(pam_amplitude(i_bits, levels), pam_amplitude(q_bits, levels)) / scale;
        }
    }

    unsigned Constellation::label_of(std::span<const std::uint8_t> bits) const
    {
        if (bits.size() != static_cast<std::size_t>(bits_))
            throw std::invalid_argument("label_of: expected " + std::to_string(bits_) + " bits");
        unsigned v = 0;
        for (auto b : bits)
            v = (v << 1) | (b & 1u);
        return v;
    }

    void Constellation::write_label(unsigned label, std::span<std::uint8_t> out) const
    {
        for (int i = 0; i < bits_; ++i)
            out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((label >> (bits_ - 1 - i)) & 1u);
    }

    unsigned Constellation::slice(Complex z) const
    {
        unsigned best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (unsigned label = 0; label < points_.size(); ++label)
        {
            const double d = std::norm(z - points_[label]);
            if (d < best_d)
            {
                best_d = d;
                best = label;
            }
        }
        return best;
    }

    double Constellation::min_distance() const
    {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < points_.size(); ++a)
            for (std::size_t b = a + 1; b < points_.size(); ++b)
                d = std::min(d, std::abs(points_[a] - points_[b]));
        return d;
    }

    const Constellation &constellation(int order)
    {
        static const std::array<Constellation, 4> table{Constellation(2), Constellation(4), Constellation(16),
                                                        Constellation(64)};
        switch (order)
        {
        case 2:
            return table[0];
        case 4:
            return table[1];
        case 16:
            return table[2];
        case 64:
            return table[3];
        default:
            throw std::invalid_argument("unsupported modulation order " + std::to_string(order));
        }
    }

    std::vector<Complex> qam_modulate(std::span<const std::uint8_t> bits, int order)
    {
        const Constellation &c = constellation(order);
        const auto k = static_cast<std::size_t>(c.bits_per_symbol());
        if (bits.size() % k != 0)
            throw std::invalid_argument("qam_modulate: bit count not divisible by log2(M)");
        std::vector<Complex> out;
        out.reserve(bits.size() / k);
        for (std::size_t i = 0; i < bits.size(); i += k)
            out.push_back(c.point(c.label_of(bits.subspan(i, k))));
        return out;
    }
}
