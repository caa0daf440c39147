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

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "faim/config.hpp"
#include "faim/constellation.hpp"
#include "faim/types.hpp"

namespace faim
{
    enum class CodebookKind
    {
        random,
        designed
    };

    // Ordered list of K = 2^floor(log2 C(P, Nt)) position patterns. Entry v carries the
    // index bits of v written most-significant bit first.
    class Codebook
    {
    public:
        Codebook(int num_positions, int nt, std::vector<Pattern> patterns, CodebookKind kind,
                 std::vector<double> squared_norms = {});

        int num_positions() const { return num_positions_; }
        int nt() const { return nt_; }
        std::size_t size() const { return patterns_.size(); }
        int bits_per_index() const { return bits_; }
        CodebookKind kind() const { return kind_; }

        const Pattern &pattern(std::size_t v) const { return patterns_[v]; }
        const std::vector<Pattern> &patterns() const { return patterns_; }

        // Effective-channel squared norms per entry (designed codebooks only).
        const std::vector<double> &squared_norms() const { return squared_norms_; }

        std::optional<std::size_t> find(const Pattern &p) const;

        // One fixed pattern carrying no index bits (spatial multiplexing on fixed positions).
        static Codebook single(int num_positions, Pattern pattern);

    private:
        Codebook() = default;
        void index_patterns();

        int num_positions_ = 0;
        int nt_ = 0;
        int bits_ = 0;
        CodebookKind kind_ = CodebookKind::designed;
        std::vector<Pattern> patterns_;
        std::vector<double> squared_norms_;
        std::unordered_map<std::uint64_t, std::size_t> lookup_;
    };

    std::uint64_t pattern_mask(const Pattern &p);

    // Lexicographic rank <-> combination of `nt` out of `num_positions`.
    Pattern unrank_combination(std::uint64_t rank, int num_positions, int nt);
    std::uint64_t rank_combination(const Pattern &p, int num_positions);

    // First K patterns in lexicographic order.
    Codebook canonical_codebook(int num_positions, int nt);

    // K distinct patterns drawn uniformly without channel knowledge, kept in lexicographic order.
    Codebook random_codebook(int num_positions, int nt, Rng &rng);

    // All C(P, Nt) patterns ranked by ||H_eff||^2, top K kept in nonincreasing order,
    // ties resolved towards the lexicographically smaller pattern.
    Codebook design_codebook(const CMatrix &h, int nt);

    struct SplitBits
    {
        Bits symbol_bits; // b1
        Bits index_bits;  // b2
    };

    SplitBits split_bits(std::span<const std::uint8_t> bits, const SystemConfig &config);

    struct GridCoordinate
    {
        int row = 0; // m, 0-based
        int col = 0; // n, 0-based
        bool operator==(const GridCoordinate &) const = default;
    };

    // index = row * P2 + col
    GridCoordinate pattern_to_coordinates(int index, int p1, int p2);
    int coordinates_to_index(GridCoordinate c, int p1, int p2);

    const Pattern &index_bits_to_pattern(std::span<const std::uint8_t> index_bits, const Codebook &codebook);
    Bits pattern_to_index_bits(const Pattern &pattern, const Codebook &codebook);
    Bits entry_to_index_bits(std::size_t entry, int bits_per_index);

    CVector build_transmit_vector(const Pattern &pattern, std::span<const Complex> symbols, int num_positions);

    // Columns of H at the pattern indices, in pattern order.
    CMatrix effective_channel(const CMatrix &h, const Pattern &pattern);

    // y = H x + n, n ~ CN(0, N0 I).
    CVector transmit(const CVector &x, const CMatrix &h, double n0, Rng &rng);

    struct CapacityBounds
    {
        double lower = 0.0;
        double upper = 0.0;
    };

    // beta = (1/Nt) log2(1 + ||H_eff||^2 / N0); returns (beta, beta + log2 Nt).
    CapacityBounds capacity_bounds(const CMatrix &h_eff, double n0);

    struct Frame
    {
        Bits raw_bits;
        Bits symbol_bits;
        Bits index_bits;
        std::vector<unsigned> labels;
        std::vector<Complex> symbols;
        std::size_t codebook_entry = 0;
        Pattern pattern;
        std::vector<GridCoordinate> coordinates;
        CVector x;
    };

    Frame modulate_frame(std::span<const std::uint8_t> bits, const SystemConfig &config, const Codebook &codebook);

    Bits random_bits(std::size_t n, Rng &rng);
}
