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

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "faim/detect.hpp"
#include "faim/simd/kernels.hpp"

namespace faim
{
    std::string_view detector_name(DetectorKind d)
    {
        switch (d)
        {
        case DetectorKind::ml:
            return "ml";
        case DetectorKind::sbl:
            return "sbl";
        case DetectorKind::esbl:
            return "esbl";
        }
        return "?";
    }

    DetectorKind parse_detector(std::string_view name)
    {
        if (name == "ml")
            return DetectorKind::ml;
        if (name == "sbl")
            return DetectorKind::sbl;
        if (name == "esbl")
            return DetectorKind::esbl;
        throw std::invalid_argument("unknown detector '" + std::string(name) + "'");
    }

    Complex slice_symbol(Complex z, const Constellation &constellation)
    {
        return constellation.point(constellation.slice(z));
    }

    Bits demap(const Pattern &pattern, std::span<const unsigned> labels, const Codebook &codebook,
               const Constellation &constellation)
    {
        if (static_cast<int>(labels.size()) != codebook.nt())
            throw std::invalid_argument("demap: expected one label per transmit antenna");
        const auto k = static_cast<std::size_t>(constellation.bits_per_symbol());
        Bits out(labels.size() * k);
        for (std::size_t i = 0; i < labels.size(); ++i)
            constellation.write_label(labels[i], std::span<std::uint8_t>(out).subspan(i * k, k));
        const Bits index = pattern_to_index_bits(pattern, codebook);
        out.insert(out.end(), index.begin(), index.end());
        return out;
    }

    DetectionResult ml_detect(const CVector &y, const CMatrix &h, const Codebook &codebook,
                              const Constellation &constellation, const MlOptions &options)
    {
        const int nt = codebook.nt();
        const int m = constellation.order();
        const auto nr = static_cast<std::size_t>(h.rows());
        if (h.cols() != codebook.num_positions() || y.size() != h.rows())
            throw std::invalid_argument("ml_detect: dimensions of y, H and the codebook disagree");
        const double hypotheses = static_cast<double>(codebook.size()) * std::pow(static_cast<double>(m), nt);
        if (hypotheses > options.max_hypotheses)
        {
            char msg[128];
            std::snprintf(msg, sizeof msg, "ml_detect: %.0f hypotheses exceed the guard of %.0f", hypotheses,
                          options.max_hypotheses);
            throw GuardError(msg);
        }

        const auto &points = constellation.points();
        const auto mu = static_cast<std::size_t>(m);
        const auto ntu = static_cast<std::size_t>(nt);

        // scaled[(k * M + label) * Nr ...] = H[:, I_k] * point(label)
        std::vector<Complex> scaled(ntu * mu * nr);
        std::vector<Complex> residual(ntu * nr);
        std::copy(y.data(), y.data() + nr, residual.begin());
        auto scaled_col = [&](std::size_t k, std::size_t label)
        { return std::span<const Complex>(scaled.data() + (k * mu + label) * nr, nr); };
        auto residual_at = [&](std::size_t k) { return std::span<Complex>(residual.data() + k * nr, nr); };

        double best = std::numeric_limits<double>::infinity();
        std::size_t best_entry = 0;
        std::vector<unsigned> labels(ntu, 0), best_labels(ntu, 0);

        for (std::size_t entry = 0; entry < codebook.size(); ++entry)
        {
            const Pattern &p = codebook.pattern(entry);
            for (std::size_t k = 0; k < ntu; ++k)
            {
                const std::span<const Complex> col(h.col(p[k]).data(), nr);
                for (std::size_t label = 0; label < mu; ++label)
                    simd::scale(col, points[label],
                                std::span<Complex>(scaled.data() + (k * mu + label) * nr, nr));
            }

            // Depth-first over symbol tuples; residual_at(k) = y - sum_{j<k} h_j s_j.
            auto search = [&](auto &&self, std::size_t k) -> void
            {
                if (k + 1 == ntu)
                {
                    for (std::size_t label = 0; label < mu; ++label)
                    {
                        const double metric = simd::diff_squared_norm(residual_at(k), scaled_col(k, label));
                        if (metric < best)
                        {
                            best = metric;
                            best_entry = entry;
                            labels[k] = static_cast<unsigned>(label);
                            best_labels = labels;
                        }
                    }
                    return;
                }
                for (std::size_t label = 0; label < mu; ++label)
                {
                    labels[k] = static_cast<unsigned>(label);
                    simd::subtract(residual_at(k), scaled_col(k, label), residual_at(k + 1));
                    self(self, k + 1);
                }
            };
            search(search, 0);
        }

        DetectionResult r;
        r.detector = DetectorKind::ml;
        r.codebook_entry = best_entry;
        r.pattern = codebook.pattern(best_entry);
        r.raw_pattern = r.pattern;
        r.labels = best_labels;
        for (unsigned l : best_labels)
            r.symbols.push_back(constellation.point(l));
        r.bits = demap(r.pattern, r.labels, codebook, constellation);
        r.metric = best;
        r.diagnostics.flops = hypotheses * (12.0 * static_cast<double>(nr) * nt + 2.0 * static_cast<double>(nr));
        return r;
    }
}
