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
#include <span>
#include <vector>

#include "faim/channel.hpp"
#include "faim/config.hpp"
#include "faim/modem.hpp"
#include "faim/types.hpp"

namespace faim
{
    // ---------------------------------------------------------------- spectral efficiency

    // Nt log2 M + floor(log2 C(P, Nt))
    double se_fa_im(int nt, int num_positions, int modulation_order);

    struct BaselineSe
    {
        double fa_vblast = 0.0; // Nt log2 M
        double sm_mimo = 0.0;   // log2 M + log2 Nt
    };

    BaselineSe se_baselines(int nt, int modulation_order);

    // ---------------------------------------------------------------- pairwise errors

    // Q(x) ~ exp(-x^2/2)/12 + exp(-2x^2/3)/4
    double q_approx(double x);

    // Transmitted hypothesis (pattern, symbols) and a competing one.
    struct HypothesisPair
    {
        Pattern pattern;
        std::vector<Complex> symbols;
        Pattern other_pattern;
        std::vector<Complex> other_symbols;

        bool same_pattern() const { return pattern == other_pattern; }
        bool identical() const { return same_pattern() && symbols == other_symbols; }

        // Per grid position: s_k at I_k minus s^_k at I^_k. The received difference is H w.
        CVector position_weights(int num_positions) const;
    };

    // How a single |s_k - s^_k|^2 is chosen when the per-antenna differences are not equal.
    enum class SymbolGapRule
    {
        mean,
        max
    };

    double symbol_gap(const HypothesisPair &pair, SymbolGapRule rule = SymbolGapRule::mean);

    // B with both branches taken as squared norms:
    //   same pattern:      |ds|^2 * || sum_k F^H g(t_Ik) ||^2
    //   different pattern: || F^H sum_k (g(t_Ik) s_k - g(t_I^k) s^_k) ||^2
    double pair_gap(const HypothesisPair &pair, const CMatrix &receive_frm, const CMatrix &transmit_frm,
                    SymbolGapRule rule = SymbolGapRule::mean);

    // E[exp(-Z/4N0)]/12 + E[exp(-Z/3N0)]/4 for Z = sum_i lambda_i |u_i|^2 with u_i iid CN(0, 1),
    // each eigenvalue counted `multiplicity` times. N0 = +inf gives 1/3.
    double cpep_average(std::span<const double> lambda, double n0, int multiplicity = 1);

    enum class UpepForm
    {
        // Exact MGF of the pairwise distance Z = ||H w||^2 under the channel model.
        exact,
        // Scalar-gap forms: finite path (1 - eps B c / L)^-L, infinite path
        // det(I - eps c |ds|^2 R)^-Nt.
        scalar_gap
    };

    // Receive and transmit field-response matrices of one angle draw.
    struct PathGeometry
    {
        CMatrix receive_frm;  // L x Nr
        CMatrix transmit_frm; // L x P
    };

    std::vector<PathGeometry> sample_path_geometries(const SystemConfig &config, const GridGeometry &geometry,
                                                     int count, Rng &rng);

    // Eigenvalues (times channel scaling) of the quadratic form Z = ||F^H Xi v||^2 in the
    // PRM entries, for a fixed geometry and v = G w.
    std::vector<double> finite_path_eigenvalues(const CVector &v, const PathGeometry &geom,
                                                const SystemConfig &config);

    // Average over the geometry samples of the CPEP approximation's expectation over Xi.
    std::vector<double> upep_finite(const HypothesisPair &pair, std::span<const PathGeometry> geometries,
                                    const SystemConfig &config, std::span<const double> n0,
                                    UpepForm form = UpepForm::exact, SymbolGapRule rule = SymbolGapRule::mean);
    double upep_finite(const HypothesisPair &pair, std::span<const PathGeometry> geometries,
                       const SystemConfig &config, double n0, UpepForm form = UpepForm::exact,
                       SymbolGapRule rule = SymbolGapRule::mean);

    // Infinite-path (correlated Rayleigh) limit: h_p ~ CN(0, c R) with transmit-side
    // correlation tx_corr between grid positions.
    double upep_infinite(const HypothesisPair &pair, const RMatrix &rx_corr, const RMatrix &tx_corr, double c,
                         double n0, UpepForm form = UpepForm::exact, SymbolGapRule rule = SymbolGapRule::mean);

    enum class ChannelModelKind
    {
        finite_path,
        infinite_path
    };

    struct UpepModel
    {
        ChannelModelKind kind = ChannelModelKind::finite_path;
        UpepForm form = UpepForm::exact;
        SymbolGapRule gap_rule = SymbolGapRule::mean;
        int geometry_samples = 1000; // finite path only
        std::uint64_t seed = 1;
    };

    struct AbepOptions
    {
        std::size_t max_hypotheses = 4096;
    };

    // Union bound (1 / (R 2^R)) sum_{a != b} d(a, b) UPEP(a -> b), one value per N0.
    std::vector<double> abep_bound(const SystemConfig &config, const Codebook &codebook, const UpepModel &model,
                                   std::span<const double> n0, const AbepOptions &options = {});

    // Singular values above rel_tol * largest.
    int numerical_rank(const RMatrix &m, double rel_tol = 1e-9);

    // rank(R) * Nt
    int diversity_order(const RMatrix &rx_corr, int nt);
}
