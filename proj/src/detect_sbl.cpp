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
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "faim/detect.hpp"

namespace faim
{
    SblState initial_sbl_state(int num_positions)
    {
        if (num_positions < 1)
            throw std::invalid_argument("initial_sbl_state: need at least one position");
        SblState s;
        s.candidates.resize(static_cast<std::size_t>(num_positions));
        std::iota(s.candidates.begin(), s.candidates.end(), 0);
        s.gamma = RVector::Ones(num_positions);
        s.mu = CVector::Zero(num_positions);
        s.sigma = CMatrix::Identity(num_positions, num_positions);
        return s;
    }

    SblState sbl_update(const SblState &state, const CVector &y, const CMatrix &h_surviving, double n0,
                        double loading)
    {
        const Eigen::Index n = state.scale();
        const Eigen::Index nr = h_surviving.rows();
        if (!(n0 > 0.0))
            throw std::invalid_argument("sbl_update: N0 must be positive");
        if (h_surviving.cols() != n || state.gamma.size() != n || y.size() != nr)
            throw std::invalid_argument("sbl_update: state, H and y dimensions disagree");

        // H Gamma, with Gamma = diag(gamma) real
        const CMatrix hg = h_surviving * state.gamma.cast<Complex>().asDiagonal();
        CMatrix sigma_y = hg * h_surviving.adjoint();
        sigma_y.diagonal().array() += Complex(n0 + loading, 0.0);

        const double trace = sigma_y.diagonal().real().sum();
        const Eigen::SelfAdjointEigenSolver<CMatrix> eig(sigma_y, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() >= 1e-12 * trace))
            throw ConditioningError("sbl_update: Sigma_y is numerically singular");
        const Eigen::LLT<CMatrix> chol(sigma_y);
        if (chol.info() != Eigen::Success)
            throw ConditioningError("sbl_update: Cholesky factorisation of Sigma_y failed");

        const CMatrix w = chol.solve(hg); // Sigma_y^-1 H Gamma
        SblState next;
        next.candidates = state.candidates;
        next.mu = w.adjoint() * y;
        next.sigma = -(hg.adjoint() * w);
        next.sigma.diagonal() += state.gamma.cast<Complex>();
        next.gamma.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
            next.gamma(i) = std::norm(next.mu(i)) + next.sigma(i, i).real();
        next.iteration = state.iteration + 1;
        return next;
    }

    int PruningSchedule::total_pruned() const
    {
        return std::accumulate(prune_counts.begin(), prune_counts.end(), 0);
    }

    void PruningSchedule::validate(int num_positions, int nt, bool strict) const
    {
        if (max_iterations < 1)
            throw std::invalid_argument("PruningSchedule: T_max must be at least 1");
        if (pruning_iterations() > max_iterations)
            throw std::invalid_argument("PruningSchedule: T_b exceeds T_max");
        for (int psi : prune_counts)
            if (psi < 1)
                throw std::invalid_argument("PruningSchedule: pruning counts must be positive");
        const int survivors = num_positions - total_pruned();
        if (survivors < nt)
            throw std::invalid_argument("PruningSchedule: only " + std::to_string(survivors) +
                                        " candidates would survive, fewer than Nt = " + std::to_string(nt));
        if (strict && !(survivors > num_positions - nt))
            throw std::invalid_argument("PruningSchedule: strict mode requires P* > P - Nt (P* = " +
                                        std::to_string(survivors) + ")");
    }

    namespace
    {
        // Positions (into state vectors) ordered by gamma descending; ties keep the lower index first.
        std::vector<Eigen::Index> order_by_gamma(const RVector &gamma)
        {
            std::vector<Eigen::Index> order(static_cast<std::size_t>(gamma.size()));
            std::iota(order.begin(), order.end(), Eigen::Index{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](Eigen::Index a, Eigen::Index b) { return std::abs(gamma(a)) > std::abs(gamma(b)); });
            return order;
        }

        void keep_positions(SblState &s, CMatrix &h, std::vector<Eigen::Index> keep)
        {
            std::sort(keep.begin(), keep.end());
            const auto n = static_cast<Eigen::Index>(keep.size());
            SblState out;
            out.iteration = s.iteration;
            out.candidates.reserve(keep.size());
            out.gamma.resize(n);
            out.mu.resize(n);
            out.sigma.resize(n, n);
            CMatrix hk(h.rows(), n);
            for (Eigen::Index a = 0; a < n; ++a)
            {
                const Eigen::Index ia = keep[static_cast<std::size_t>(a)];
                out.candidates.push_back(s.candidates[static_cast<std::size_t>(ia)]);
                out.gamma(a) = s.gamma(ia);
                out.mu(a) = s.mu(ia);
                hk.col(a) = h.col(ia);
                for (Eigen::Index b = 0; b < n; ++b)
                    out.sigma(a, b) = s.sigma(ia, keep[static_cast<std::size_t>(b)]);
            }
            s = std::move(out);
            h = std::move(hk);
        }

        void estimate_symbols(DetectionResult &r, const CVector &y, const CMatrix &h, const Constellation &c)
        {
            const CMatrix h_eff = effective_channel(h, r.pattern);
            const CVector s = h_eff.completeOrthogonalDecomposition().solve(y);
            r.labels.clear();
            r.symbols.clear();
            for (Eigen::Index k = 0; k < s.size(); ++k)
            {
                const unsigned label = c.slice(s(k));
                r.labels.push_back(label);
                r.symbols.push_back(c.point(label));
            }
        }
    }

    std::size_t map_to_codebook(const Pattern &support, const SblState &final_state, const Codebook &codebook)
    {
        if (auto exact = codebook.find(support))
            return *exact;

        std::vector<double> gamma(static_cast<std::size_t>(codebook.num_positions()), 0.0);
        std::vector<bool> alive(gamma.size(), false);
        for (std::size_t i = 0; i < final_state.candidates.size(); ++i)
        {
            const auto idx = static_cast<std::size_t>(final_state.candidates[i]);
            gamma[idx] = std::abs(final_state.gamma(static_cast<Eigen::Index>(i)));
            alive[idx] = true;
        }

        std::optional<std::size_t> best_inside, best_any;
        double score_inside = -1.0, score_any = -1.0;
        for (std::size_t v = 0; v < codebook.size(); ++v)
        {
            double sum = 0.0;
            bool inside = true;
            for (int i : codebook.pattern(v))
            {
                sum += gamma[static_cast<std::size_t>(i)];
                inside = inside && alive[static_cast<std::size_t>(i)];
            }
            if (inside && sum > score_inside)
            {
                score_inside = sum;
                best_inside = v;
            }
            if (sum > score_any)
            {
                score_any = sum;
                best_any = v;
            }
        }
        return best_inside ? *best_inside : *best_any;
    }

    DetectionResult efficient_sbl_detect(const CVector &y, const CMatrix &h, double n0,
                                         const PruningSchedule &schedule, const Codebook &codebook,
                                         const Constellation &constellation, const SblOptions &options)
    {
        const int num_positions = static_cast<int>(h.cols());
        const int nt = codebook.nt();
        if (codebook.num_positions() != num_positions || y.size() != h.rows())
            throw std::invalid_argument("efficient_sbl_detect: dimensions of y, H and the codebook disagree");
        schedule.validate(num_positions, nt, options.strict);

        DetectionResult r;
        r.detector = schedule.prune_counts.empty() ? DetectorKind::sbl : DetectorKind::esbl;
        const double nr = static_cast<double>(h.rows());

        SblState state = initial_sbl_state(num_positions);
        CMatrix h_cur = h;
        for (int t = 0; t < schedule.max_iterations; ++t)
        {
            const double scale_before = static_cast<double>(state.scale());
            const RVector gamma_before = state.gamma;
            try
            {
                state = sbl_update(state, y, h_cur, n0);
            }
            catch (const ConditioningError &)
            {
                // load to 1e-11 of trace(Sigma_y), well clear of the singularity threshold
                const double trace = (h_cur.colwise().squaredNorm().transpose().array() * state.gamma.array()).sum() +
                                     nr * n0;
                state = sbl_update(state, y, h_cur, n0, 1e-11 * trace);
                r.diagnostics.loaded = true;
            }

            bool converged = false;
            if (options.gamma_tolerance)
            {
                const double ref = std::max(gamma_before.cwiseAbs().maxCoeff(), 1e-300);
                converged = (state.gamma - gamma_before).cwiseAbs().maxCoeff() / ref < *options.gamma_tolerance;
            }

            if (t < schedule.pruning_iterations())
            {
                const auto psi = static_cast<std::size_t>(schedule.prune_counts[static_cast<std::size_t>(t)]);
                std::vector<Eigen::Index> order = order_by_gamma(state.gamma);
                order.resize(order.size() - psi);
                keep_positions(state, h_cur, std::move(order));
            }
            const double scale_after = static_cast<double>(state.scale());
            r.diagnostics.flops += sbl_iteration_flops(
                nr, options.accounting == FlopAccounting::pre_prune ? scale_before : scale_after);
            r.diagnostics.iterations = t + 1;
            if (options.trace)
                options.trace->push_back(state);
            // Early exit only once pruning is finished, so the candidate set is the scheduled one.
            if (converged && t + 1 >= schedule.pruning_iterations())
                break;
        }

        const std::vector<Eigen::Index> order = order_by_gamma(state.gamma);
        for (int k = 0; k < nt; ++k)
            r.raw_pattern.push_back(state.candidates[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]);
        std::sort(r.raw_pattern.begin(), r.raw_pattern.end());

        r.codebook_entry = map_to_codebook(r.raw_pattern, state, codebook);
        r.pattern = codebook.pattern(r.codebook_entry);
        r.diagnostics.pattern_remapped = r.pattern != r.raw_pattern;
        r.diagnostics.final_candidates = state.candidates;

        estimate_symbols(r, y, h, constellation);
        r.bits = demap(r.pattern, r.labels, codebook, constellation);
        return r;
    }

    DetectionResult original_sbl_detect(const CVector &y, const CMatrix &h, double n0, int max_iterations,
                                        const Codebook &codebook, const Constellation &constellation,
                                        const SblOptions &options)
    {
        PruningSchedule none;
        none.max_iterations = max_iterations;
        DetectionResult r = efficient_sbl_detect(y, h, n0, none, codebook, constellation, options);
        r.detector = DetectorKind::sbl;
        return r;
    }
}
