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

#include "faim/modem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "faim/rng.hpp"

namespace faim
{
    SplitBits split_bits(std::span<const std::uint8_t> bits, const SystemConfig &config)
    {
        const auto n1 = static_cast<std::size_t>(config.symbol_bits());
        const auto n2 = static_cast<std::size_t>(config.pattern_bits());
        if (bits.size() != n1 + n2)
            throw std::invalid_argument("split_bits: expected " + std::to_string(n1 + n2) + " bits, got " +
                                        std::to_string(bits.size()));
        SplitBits out;
        out.symbol_bits.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(n1));
        out.index_bits.assign(bits.begin() + static_cast<std::ptrdiff_t>(n1), bits.end());
        return out;
    }

    GridCoordinate pattern_to_coordinates(int index, int p1, int p2)
    {
        if (p1 < 1 || p2 < 1 || index < 0 || index >= p1 * p2)
            throw std::out_of_range("pattern_to_coordinates: index " + std::to_string(index) + " outside grid");
        return {index / p2, index % p2};
    }

    int coordinates_to_index(GridCoordinate c, int p1, int p2)
    {
        if (c.row < 0 || c.row >= p1 || c.col < 0 || c.col >= p2)
            throw std::out_of_range("coordinates_to_index: coordinate outside grid");
        return c.row * p2 + c.col;
    }

    const Pattern &index_bits_to_pattern(std::span<const std::uint8_t> index_bits, const Codebook &codebook)
    {
        if (index_bits.size() != static_cast<std::size_t>(codebook.bits_per_index()))
            throw std::invalid_argument("index_bits_to_pattern: wrong number of index bits");
        std::size_t v = 0;
        for (auto b : index_bits)
            v = (v << 1) | (b & 1u);
        return codebook.pattern(v);
    }

    Bits entry_to_index_bits(std::size_t entry, int bits_per_index)
    {
        Bits out(static_cast<std::size_t>(bits_per_index));
        for (int i = 0; i < bits_per_index; ++i)
            out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((entry >> (bits_per_index - 1 - i)) & 1u);
        return out;
    }

    Bits pattern_to_index_bits(const Pattern &pattern, const Codebook &codebook)
    {
        const auto v = codebook.find(pattern);
        if (!v)
            throw std::invalid_argument("pattern_to_index_bits: pattern is not in the codebook");
        return entry_to_index_bits(*v, codebook.bits_per_index());
    }

    CVector build_transmit_vector(const Pattern &pattern, std::span<const Complex> symbols, int num_positions)
    {
        if (pattern.size() != symbols.size())
            throw std::invalid_argument("build_transmit_vector: pattern and symbol counts differ");
        CVector x = CVector::Zero(num_positions);
        for (std::size_t k = 0; k < pattern.size(); ++k)
        {
            const int i = pattern[k];
            if (i < 0 || i >= num_positions)
                throw std::out_of_range("build_transmit_vector: index out of range");
            if (k > 0 && i <= pattern[k - 1])
                throw std::invalid_argument("build_transmit_vector: indices must be strictly increasing");
            x(i) = symbols[k];
        }
        return x;
    }

    CMatrix effective_channel(const CMatrix &h, const Pattern &pattern)
    {
        CMatrix out(h.rows(), static_cast<Eigen::Index>(pattern.size()));
        for (std::size_t k = 0; k < pattern.size(); ++k)
        {
            if (pattern[k] < 0 || pattern[k] >= h.cols())
                throw std::out_of_range("effective_channel: index out of range");
            out.col(static_cast<Eigen::Index>(k)) = h.col(pattern[k]);
        }
        return out;
    }

    CVector transmit(const CVector &x, const CMatrix &h, double n0, Rng &rng)
    {
        if (!(n0 >= 0.0))
            throw std::invalid_argument("transmit: N0 must be nonnegative");
        CVector y = h * x;
        if (n0 > 0.0)
            for (Eigen::Index i = 0; i < y.size(); ++i)
                y(i) += complex_normal(rng, n0);
        return y;
    }

    CapacityBounds capacity_bounds(const CMatrix &h_eff, double n0)
    {
        if (!(n0 > 0.0))
            throw std::invalid_argument("capacity_bounds: N0 must be positive");
        const double nt = static_cast<double>(h_eff.cols());
        const double beta = std::log2(1.0 + h_eff.squaredNorm() / n0) / nt;
        return {beta, beta + std::log2(nt)};
    }

    Frame modulate_frame(std::span<const std::uint8_t> bits, const SystemConfig &config, const Codebook &codebook)
    {
        if (codebook.nt() != config.nt || codebook.num_positions() != config.num_positions())
            throw std::invalid_argument("modulate_frame: codebook does not match the configuration");
        const Constellation &cons = constellation(config.modulation_order);
        Frame f;
        f.raw_bits.assign(bits.begin(), bits.end());
        SplitBits s = split_bits(bits, config);
        f.symbol_bits = std::move(s.symbol_bits);
        f.index_bits = std::move(s.index_bits);

        const auto k = static_cast<std::size_t>(cons.bits_per_symbol());
        for (std::size_t i = 0; i < f.symbol_bits.size(); i += k)
        {
            const unsigned label = cons.label_of(std::span<const std::uint8_t>(f.symbol_bits).subspan(i, k));
            f.labels.push_back(label);
            f.symbols.push_back(cons.point(label));
        }

        std::size_t v = 0;
        for (auto b : f.index_bits)
            v = (v << 1) | (b & 1u);
        f.codebook_entry = v;
        f.pattern = codebook.pattern(v);
        for (int i : f.pattern)
            f.coordinates.push_back(pattern_to_coordinates(i, config.p1, config.p2));
        f.x = build_transmit_vector(f.pattern, f.symbols, config.num_positions());
        return f;
    }

    Bits random_bits(std::size_t n, Rng &rng)
    {
        Bits b(n);
        std::uint64_t word = 0;
        int left = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (left == 0)
            {
                word = rng();
                left = 64;
            }
            b[i] = static_cast<std::uint8_t>(word & 1u);
            word >>= 1;
            --left;
        }
        return b;
    }
}
