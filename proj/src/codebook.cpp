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

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "faim/modem.hpp"
#include "faim/simd/kernels.hpp"

namespace faim
{
    namespace
    {
        constexpr std::uint64_t max_enumerated_patterns = std::uint64_t{1} << 26;

        bool next_combination(Pattern &p, int num_positions)
        {
            const int nt = static_cast<int>(p.size());
            int i = nt - 1;
            while (i >= 0 && p[static_cast<std::size_t>(i)] == num_positions - nt + i)
                --i;
            if (i < 0)
                return false;
            ++p[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < nt; ++j)
                p[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }

        Pattern first_combination(int nt)
        {
            Pattern p(static_cast<std::size_t>(nt));
            for (int i = 0; i < nt; ++i)
                p[static_cast<std::size_t>(i)] = i;
            return p;
        }
    }

    std::uint64_t pattern_mask(const Pattern &p)
    {
        std::uint64_t m = 0;
        for (int i : p)
            m |= std::uint64_t{1} << i;
        return m;
    }

    Codebook::Codebook(int num_positions, int nt, std::vector<Pattern> patterns, CodebookKind kind,
                       std::vector<double> squared_norms)
        : num_positions_(num_positions), nt_(nt), bits_(index_bits(num_positions, nt)), kind_(kind),
          patterns_(std::move(patterns)), squared_norms_(std::move(squared_norms))
    {
        if (num_positions < 1 || num_positions > 64)
            throw std::invalid_argument("Codebook: P must lie in [1, 64]");
        if (patterns_.size() != (std::size_t{1} << bits_))
            throw std::invalid_argument("Codebook: expected " + std::to_string(std::size_t{1} << bits_) +
                                        " patterns, got " + std::to_string(patterns_.size()));
        if (!squared_norms_.empty() && squared_norms_.size() != patterns_.size())
            throw std::invalid_argument("Codebook: squared norm count does not match pattern count");
        index_patterns();
    }

    Codebook Codebook::single(int num_positions, Pattern pattern)
    {
        if (num_positions < 1 || num_positions > 64)
            throw std::invalid_argument("Codebook: P must lie in [1, 64]");
        Codebook c;
        c.num_positions_ = num_positions;
        c.nt_ = static_cast<int>(pattern.size());
        c.patterns_.push_back(std::move(pattern));
        c.index_patterns();
        return c;
    }

    void Codebook::index_patterns()
    {
        lookup_.reserve(patterns_.size());
        for (std::size_t v = 0; v < patterns_.size(); ++v)
        {
            const Pattern &p = patterns_[v];
            if (static_cast<int>(p.size()) != nt_ || nt_ < 1)
                throw std::invalid_argument("Codebook: pattern with wrong number of indices");
            for (std::size_t k = 0; k < p.size(); ++k)
            {
                if (p[k] < 0 || p[k] >= num_positions_)
                    throw std::invalid_argument("Codebook: pattern index out of range");
                if (k > 0 && p[k] <= p[k - 1])
                    throw std::invalid_argument("Codebook: pattern indices must be strictly increasing");
            }
            if (!lookup_.emplace(pattern_mask(p), v).second)
                throw std::invalid_argument("Codebook: duplicate pattern");
        }
    }

    std::optional<std::size_t> Codebook::find(const Pattern &p) const
    {
        if (static_cast<int>(p.size()) != nt_)
            return std::nullopt;
        for (int i : p)
            if (i < 0 || i >= num_positions_)
                return std::nullopt;
        auto it = lookup_.find(pattern_mask(p));
        if (it == lookup_.end() || patterns_[it->second] != p)
            return std::nullopt;
        return it->second;
    }

    Pattern unrank_combination(std::uint64_t rank, int num_positions, int nt)
    {
        if (rank >= binomial(num_positions, nt))
            throw std::out_of_range("unrank_combination: rank out of range");
        Pattern p;
        p.reserve(static_cast<std::size_t>(nt));
        int next = 0;
        for (int k = nt; k > 0; --k)
        {
            // Skip blocks of combinations starting with `next` while the rank lies past them.
            for (;;)
            {
                const std::uint64_t block = binomial(num_positions - next - 1, k - 1);
                if (rank < block)
                    break;
                rank -= block;
                ++next;
            }
            p.push_back(next);
            ++next;
        }
        return p;
    }

    std::uint64_t rank_combination(const Pattern &p, int num_positions)
    {
        std::uint64_t rank = 0;
        int next = 0;
        const int nt = static_cast<int>(p.size());
        for (int k = 0; k < nt; ++k)
        {
            for (int v = next; v < p[static_cast<std::size_t>(k)]; ++v)
                rank += binomial(num_positions - v - 1, nt - k - 1);
            next = p[static_cast<std::size_t>(k)] + 1;
        }
        return rank;
    }

    Codebook canonical_codebook(int num_positions, int nt)
    {
        const std::size_t k = std::size_t{1} << index_bits(num_positions, nt);
        std::vector<Pattern> patterns;
        patterns.reserve(k);
        Pattern p = first_combination(nt);
        for (std::size_t i = 0; i < k; ++i)
        {
            patterns.push_back(p);
            next_combination(p, num_positions);
        }
        return Codebook(num_positions, nt, std::move(patterns), CodebookKind::random);
    }

    Codebook random_codebook(int num_positions, int nt, Rng &rng)
    {
        const std::uint64_t a = binomial(num_positions, nt);
        const std::uint64_t k = std::uint64_t{1} << index_bits(num_positions, nt);
        // Floyd's sampling of k distinct ranks from [0, a).
        std::unordered_set<std::uint64_t> chosen;
        chosen.reserve(static_cast<std::size_t>(k));
        for (std::uint64_t j = a - k; j < a; ++j)
        {
            std::uniform_int_distribution<std::uint64_t> u(0, j);
            const std::uint64_t t = u(rng);
            if (!chosen.insert(t).second)
                chosen.insert(j);
        }
        std::vector<std::uint64_t> ranks(chosen.begin(), chosen.end());
        std::sort(ranks.begin(), ranks.end());
        std::vector<Pattern> patterns;
        patterns.reserve(ranks.size());
        for (auto r : ranks)
            patterns.push_back(unrank_combination(r, num_positions, nt));
        return Codebook(num_positions, nt, std::move(patterns), CodebookKind::random);
    }

    Codebook design_codebook(const CMatrix &h, int nt)
    {
        const int num_positions = static_cast<int>(h.cols());
        const std::uint64_t a = binomial(num_positions, nt);
        if (a > max_enumerated_patterns)
            throw GuardError("design_codebook: C(P, Nt) = " + std::to_string(a) + " patterns is too many to enumerate");
        const std::size_t k = std::size_t{1} << index_bits(num_positions, nt);

        std::vector<double> column_norm(static_cast<std::size_t>(num_positions));
        for (int i = 0; i < num_positions; ++i)
            column_norm[static_cast<std::size_t>(i)] = simd::squared_norm(
                std::span<const Complex>(h.col(i).data(), static_cast<std::size_t>(h.rows())));

        struct Scored
        {
            double norm;
            std::uint64_t rank;
        };
        std::vector<Scored> scored;
        scored.reserve(static_cast<std::size_t>(a));
        Pattern p = first_combination(nt);
        std::uint64_t rank = 0;
        do
        {
            double s = 0.0;
            for (int i : p)
                s += column_norm[static_cast<std::size_t>(i)];
            scored.push_back({s, rank++});
        } while (next_combination(p, num_positions));

        auto better = [](const Scored &l, const Scored &r)
        { return l.norm > r.norm || (l.norm == r.norm && l.rank < r.rank); };
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(), better);

        std::vector<Pattern> patterns;
        std::vector<double> norms;
        patterns.reserve(k);
        norms.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
        {
            patterns.push_back(unrank_combination(scored[i].rank, num_positions, nt));
            norms.push_back(scored[i].norm);
        }
        return Codebook(num_positions, nt, std::move(patterns), CodebookKind::designed, std::move(norms));
    }
}
