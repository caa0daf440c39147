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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "faim/constellation.hpp"
#include "faim/flops.hpp"
#include "faim/modem.hpp"
#include "faim/types.hpp"

namespace faim
{
    enum class DetectorKind
    {
        ml,
        sbl,  // original sparse Bayesian learning, no pruning
        esbl  // efficient sparse Bayesian learning with candidate pruning
    };

    std::string_view detector_name(DetectorKind d);
    DetectorKind parse_detector(std::string_view name);

    struct DetectionDiagnostics
    {
        int iterations = 0;
        std::vector<int> final_candidates;
        double flops = 0.0;
        // The sparse detector's support was not a codebook pattern and was mapped onto one.
        bool pattern_remapped = false;
        // Diagonal loading had to be applied to Sigma_y at least once.
        bool loaded = false;
    };

    struct DetectionResult
    {
        DetectorKind detector = DetectorKind::ml;
        Pattern pattern;     // codebook pattern used for the bits
        Pattern raw_pattern; // support picked by the detector (equal to pattern for ML)
        std::size_t codebook_entry = 0;
        std::vector<unsigned> labels;
        std::vector<Complex> symbols;
        Bits bits;
        double metric = 0.0; // ML: ||y - H x||^2 of the winner
        DetectionDiagnostics diagnostics;
    };

    // ---------------------------------------------------------------- ML

    struct MlOptions
    {
        double max_hypotheses = 1e8;
    };

    // Exhaustive joint search over K * M^Nt hypotheses. Ties keep the first hypothesis in
    // enumeration order: codebook order, then symbol labels lexicographically with the
    // first antenna most significant.
    DetectionResult ml_detect(const CVector &y, const CMatrix &h, const Codebook &codebook,
                              const Constellation &constellation, const MlOptions &options = {});

    // ---------------------------------------------------------------- SBL

    struct SblState
    {
        std::vector<int> candidates; // surviving grid indices, ascending
        RVector gamma;
        CVector mu;
        CMatrix sigma;
        int iteration = 0;

        Eigen::Index scale() const { return static_cast<Eigen::Index>(candidates.size()); }
    };

    // gamma = 1, candidates = {0..P-1}
    SblState initial_sbl_state(int num_positions);

    // One evidence-maximisation step on the surviving columns:
    //   Sigma_y = N0 I + H Gamma H^H
    //   mu      = Gamma H^H Sigma_y^-1 y
    //   Sigma   = Gamma - Gamma H^H Sigma_y^-1 H Gamma
    //   gamma_i = |mu_i|^2 + Sigma_ii
    // `loading` is added to the diagonal of Sigma_y. Throws ConditioningError when the
    // smallest eigenvalue of Sigma_y falls below 1e-12 * trace.
    SblState sbl_update(const SblState &state, const CVector &y, const CMatrix &h_surviving, double n0,
                        double loading = 0.0);

    struct PruningSchedule
    {
        std::vector<int> prune_counts; // psi_1..psi_Tb
        int max_iterations = 10;       // T_max

        int pruning_iterations() const { return static_cast<int>(prune_counts.size()); }
        int total_pruned() const;

        // At least Nt candidates must survive. With strict set the survivor count must
        // also exceed P - Nt.
        void validate(int num_positions, int nt, bool strict = false) const;
    };

    struct SblOptions
    {
        bool strict = false;
        // Stop once max_i |gamma_new - gamma_old| / max(gamma_old) falls below this value.
        std::optional<double> gamma_tolerance;
        FlopAccounting accounting = FlopAccounting::pre_prune;
        // When set, receives the state after every iteration (after pruning).
        std::vector<SblState> *trace = nullptr;
    };

    DetectionResult efficient_sbl_detect(const CVector &y, const CMatrix &h, double n0,
                                         const PruningSchedule &schedule, const Codebook &codebook,
                                         const Constellation &constellation, const SblOptions &options = {});

    DetectionResult original_sbl_detect(const CVector &y, const CMatrix &h, double n0, int max_iterations,
                                        const Codebook &codebook, const Constellation &constellation,
                                        const SblOptions &options = {});

    // Codebook entry for a support found by a sparse detector. An exact match wins; otherwise
    // the entry with the largest gamma-sum among those contained in the final candidate set,
    // and failing that the entry with the largest gamma-sum overall (gamma = 0 off the set).
    std::size_t map_to_codebook(const Pattern &support, const SblState &final_state, const Codebook &codebook);

    // ---------------------------------------------------------------- demapping

    Complex slice_symbol(Complex z, const Constellation &constellation);

    // Symbol bits followed by the codebook index bits.
    Bits demap(const Pattern &pattern, std::span<const unsigned> labels, const Codebook &codebook,
               const Constellation &constellation);
}
