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

#include "faim/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "faim/rng.hpp"

namespace faim
{
    double se_fa_im(int nt, int num_positions, int modulation_order)
    {
        return static_cast<double>(nt * log2_exact(modulation_order) + index_bits(num_positions, nt));
    }

    BaselineSe se_baselines(int nt, int modulation_order)
    {
        if (nt < 1)
            throw std::invalid_argument("se_baselines: Nt must be at least 1");
        const double k = log2_exact(modulation_order);
        return {nt * k, k + std::log2(static_cast<double>(nt))};
    }

    double q_approx(double x)
    {
        if (!(x >= 0.0))
            throw std::invalid_argument("q_approx: argument must be nonnegative");
        return std::exp(-x * x / 2.0) / 12.0 + std::exp(-2.0 * x * x / 3.0) / 4.0;
    }

    CVector HypothesisPair::position_weights(int num_positions) const
    {
        if (pattern.size() != symbols.size() || other_pattern.size() != other_symbols.size() ||
            pattern.size() != other_pattern.size())
            throw std::invalid_argument("HypothesisPair: pattern and symbol counts disagree");
        CVector w = CVector::Zero(num_positions);
        for (std::size_t k = 0; k < pattern.size(); ++k)
        {
            if (pattern[k] < 0 || pattern[k] >= num_positions || other_pattern[k] < 0 ||
                other_pattern[k] >= num_positions)
                throw std::invalid_argument("HypothesisPair: position index out of range");
            w(pattern[k]) += symbols[k];
            w(other_pattern[k]) -= other_symbols[k];
        }
        return w;
    }

    double symbol_gap(const HypothesisPair &pair, SymbolGapRule rule)
    {
        if (pair.symbols.size() != pair.other_symbols.size() || pair.symbols.empty())
            throw std::invalid_argument("symbol_gap: symbol counts disagree");
        double sum = 0.0, largest = 0.0;
        for (std::size_t k = 0; k < pair.symbols.size(); ++k)
        {
            const double d = std::norm(pair.symbols[k] - pair.other_symbols[k]);
            sum += d;
            largest = std::max(largest, d);
        }
        return rule == SymbolGapRule::max ? largest : sum / static_cast<double>(pair.symbols.size());
    }

    double pair_gap(const HypothesisPair &pair, const CMatrix &receive_frm, const CMatrix &transmit_frm,
                    SymbolGapRule rule)
    {
        if (receive_frm.rows() != transmit_frm.rows())
            throw std::invalid_argument("pair_gap: F and G must have the same number of paths");
        const auto num_positions = static_cast<int>(transmit_frm.cols());
        CVector v;
        double scale = 1.0;
        if (pair.same_pattern())
        {
            v = CVector::Zero(transmit_frm.rows());
            for (int i : pair.pattern)
            {
                if (i < 0 || i >= num_positions)
                    throw std::invalid_argument("pair_gap: position index out of range");
                v += transmit_frm.col(i);
            }
            scale = symbol_gap(pair, rule);
        }
        else
            v = transmit_frm * pair.position_weights(num_positions);
        return scale * (receive_frm.adjoint() * v).squaredNorm();
    }

    double cpep_average(std::span<const double> lambda, double n0, int multiplicity)
    {
        if (!(n0 > 0.0))
            throw std::invalid_argument("cpep_average: N0 must be positive");
        if (multiplicity < 1)
            throw std::invalid_argument("cpep_average: multiplicity must be positive");
        if (std::isinf(n0))
            return 1.0 / 3.0;
        // M(eps) = prod (1 - eps lambda)^-mult, taken in logs to survive large products.
        double log4 = 0.0, log3 = 0.0;
        for (double l : lambda)
        {
            const double lp = std::max(l, 0.0);
            log4 += std::log1p(lp / (4.0 * n0));
            log3 += std::log1p(lp / (3.0 * n0));
        }
        return std::exp(-multiplicity * log4) / 12.0 + std::exp(-multiplicity * log3) / 4.0;
    }

    std::vector<PathGeometry> sample_path_geometries(const SystemConfig &config, const GridGeometry &geometry,
                                                     int count, Rng &rng)
    {
        if (count < 1)
            throw std::invalid_argument("sample_path_geometries: need at least one sample");
        std::vector<PathGeometry> out;
        out.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
        {
            const PathSet paths = sample_path_set(config, rng);
            out.push_back({build_receive_frm(geometry.rx, paths, config.wavelength),
                           build_transmit_frm(geometry.tx, paths, config.wavelength)});
        }
        return out;
    }

    namespace
    {
        std::vector<double> hermitian_eigenvalues(const CMatrix &m)
        {
            const Eigen::SelfAdjointEigenSolver<CMatrix> eig(m, Eigen::EigenvaluesOnly);
            if (eig.info() != Eigen::Success)
                throw std::runtime_error("eigenvalue decomposition failed");
            return {eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size()};
        }

        std::vector<double> symmetric_eigenvalues(const RMatrix &m)
        {
            const Eigen::SelfAdjointEigenSolver<RMatrix> eig(m, Eigen::EigenvaluesOnly);
            if (eig.info() != Eigen::Success)
                throw std::runtime_error("eigenvalue decomposition failed");
            return {eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size()};
        }

        void check_n0(std::span<const double> n0)
        {
            for (double v : n0)
                if (!(v > 0.0))
                    throw std::invalid_argument("UPEP: N0 must be positive");
        }

        // Accumulates weight * CPEP average for each N0.
        void accumulate(std::vector<double> &acc, std::span<const double> lambda, std::span<const double> n0,
                        int multiplicity, double weight)
        {
            for (std::size_t i = 0; i < n0.size(); ++i)
                acc[i] += weight * cpep_average(lambda, n0[i], multiplicity);
        }

        struct FiniteEvaluator
        {
            const SystemConfig &config;
            UpepForm form;
            SymbolGapRule rule;
            double c;
            double l;

            // v = G w for the exact form; the pair itself for the scalar-gap form.
            void add(const CVector &v, const HypothesisPair *pair, const PathGeometry &geom,
                     std::span<const double> n0, double weight, std::vector<double> &acc) const
            {
                if (form == UpepForm::exact)
                {
                    const std::vector<double> lambda = finite_path_eigenvalues(v, geom, config);
                    accumulate(acc, lambda, n0, 1, weight);
                }
                else
                {
                    const double b = pair_gap(*pair, geom.receive_frm, geom.transmit_frm, rule);
                    const double lambda = b * c / l;
                    accumulate(acc, std::span<const double>(&lambda, 1), n0, static_cast<int>(l), weight);
                }
            }
        };
    }

    std::vector<double> finite_path_eigenvalues(const CVector &v, const PathGeometry &geom,
                                                const SystemConfig &config)
    {
        const CMatrix &f = geom.receive_frm;
        if (v.size() != f.rows())
            throw std::invalid_argument("finite_path_eigenvalues: v must have one entry per path");
        const double l = static_cast<double>(f.rows());
        const double c = config.channel_gain();
        std::vector<double> lambda;
        if (config.prm_mode == PrmMode::diagonal)
        {
            // Z = || F^H diag(v) alpha ||^2, alpha ~ CN(0, c/L I)
            const CMatrix dv = v.cwiseAbs2().cast<Complex>().asDiagonal() * f;
            lambda = hermitian_eigenvalues(f.adjoint() * dv);
            for (double &x : lambda)
                x *= c / l;
        }
        else
        {
            // Xi v ~ CN(0, c ||v||^2 / L^2 I)
            lambda = hermitian_eigenvalues(f.adjoint() * f);
            const double s = c * v.squaredNorm() / (l * l);
            for (double &x : lambda)
                x *= s;
        }
        return lambda;
    }

    std::vector<double> upep_finite(const HypothesisPair &pair, std::span<const PathGeometry> geometries,
                                    const SystemConfig &config, std::span<const double> n0, UpepForm form,
                                    SymbolGapRule rule)
    {
        if (geometries.empty())
            throw std::invalid_argument("upep_finite: need at least one geometry sample");
        if (pair.identical())
            throw std::invalid_argument("upep_finite: the two hypotheses coincide");
        check_n0(n0);
        const FiniteEvaluator eval{config, form, rule, config.channel_gain(),
                                   static_cast<double>(geometries.front().receive_frm.rows())};
        const auto num_positions = static_cast<int>(geometries.front().transmit_frm.cols());
        const CVector w = pair.position_weights(num_positions);
        std::vector<double> acc(n0.size(), 0.0);
        const double weight = 1.0 / static_cast<double>(geometries.size());
        for (const PathGeometry &g : geometries)
            eval.add(form == UpepForm::exact ? CVector(g.transmit_frm * w) : CVector(), &pair, g, n0, weight, acc);
        return acc;
    }

    double upep_finite(const HypothesisPair &pair, std::span<const PathGeometry> geometries,
                       const SystemConfig &config, double n0, UpepForm form, SymbolGapRule rule)
    {
        return upep_finite(pair, geometries, config, std::span<const double>(&n0, 1), form, rule).front();
    }

    namespace
    {
        std::vector<double> infinite_eigenvalues(const HypothesisPair &pair, const std::vector<double> &rx_eig,
                                                 const RMatrix &tx_corr, double c, UpepForm form,
                                                 SymbolGapRule rule, int &multiplicity)
        {
            double scale;
            if (form == UpepForm::exact)
            {
                const CVector w = pair.position_weights(static_cast<int>(tx_corr.rows()));
                scale = std::max((w.adjoint() * tx_corr.cast<Complex>() * w)(0, 0).real(), 0.0);
                multiplicity = 1;
            }
            else
            {
                scale = symbol_gap(pair, rule);
                multiplicity = static_cast<int>(pair.pattern.size());
            }
            std::vector<double> lambda(rx_eig);
            for (double &x : lambda)
                x *= c * scale;
            return lambda;
        }
    }

    double upep_infinite(const HypothesisPair &pair, const RMatrix &rx_corr, const RMatrix &tx_corr, double c,
                         double n0, UpepForm form, SymbolGapRule rule)
    {
        if (rx_corr.rows() != rx_corr.cols() || tx_corr.rows() != tx_corr.cols())
            throw std::invalid_argument("upep_infinite: correlation matrices must be square");
        if (pair.identical())
            throw std::invalid_argument("upep_infinite: the two hypotheses coincide");
        check_n0(std::span<const double>(&n0, 1));
        int mult = 1;
        const std::vector<double> lambda =
            infinite_eigenvalues(pair, symmetric_eigenvalues(rx_corr), tx_corr, c, form, rule, mult);
        return cpep_average(lambda, n0, mult);
    }

    std::vector<double> abep_bound(const SystemConfig &config, const Codebook &codebook, const UpepModel &model,
                                   std::span<const double> n0, const AbepOptions &options)
    {
        config.validate();
        if (codebook.num_positions() != config.num_positions() || codebook.nt() != config.nt)
            throw std::invalid_argument("abep_bound: codebook does not match the configuration");
        check_n0(n0);
        const Constellation &con = constellation(config.modulation_order);
        const int nt = config.nt;
        const int kb = con.bits_per_symbol();
        const int idx_bits = codebook.bits_per_index();
        const int rate = nt * kb + idx_bits;
        const std::size_t tuples = std::size_t{1} << (nt * kb);
        const std::size_t count = codebook.size() * tuples;
        if (count > options.max_hypotheses)
            throw GuardError("abep_bound: " + std::to_string(count) + " hypotheses exceed the guard of " +
                             std::to_string(options.max_hypotheses));

        // Hypothesis h = entry * M^Nt + tuple; label = symbol label bits (first antenna most
        // significant) followed by the entry's index bits.
        struct Hypothesis
        {
            const Pattern *pattern;
            std::vector<Complex> symbols;
            std::uint64_t label;
        };
        std::vector<Hypothesis> hyp;
        hyp.reserve(count);
        for (std::size_t e = 0; e < codebook.size(); ++e)
            for (std::size_t t = 0; t < tuples; ++t)
            {
                Hypothesis h{&codebook.pattern(e), {}, (static_cast<std::uint64_t>(t) << idx_bits) | e};
                for (int k = 0; k < nt; ++k)
                {
                    const auto shift = static_cast<unsigned>((nt - 1 - k) * kb);
                    h.symbols.push_back(con.point(static_cast<unsigned>((t >> shift) & ((1u << kb) - 1u))));
                }
                hyp.push_back(std::move(h));
            }

        auto make_pair = [&](std::size_t a, std::size_t b)
        { return HypothesisPair{*hyp[a].pattern, hyp[a].symbols, *hyp[b].pattern, hyp[b].symbols}; };
        auto distance = [&](std::size_t a, std::size_t b)
        { return static_cast<double>(std::popcount(hyp[a].label ^ hyp[b].label)); };

        std::vector<double> acc(n0.size(), 0.0);
        if (model.kind == ChannelModelKind::finite_path)
        {
            if (model.geometry_samples < 1)
                throw std::invalid_argument("abep_bound: need at least one geometry sample");
            const GridGeometry geometry = make_geometry(config);
            Rng rng = derive_rng(model.seed, {0x61626570ULL});
            const FiniteEvaluator eval{config, model.form, model.gap_rule, config.channel_gain(),
                                       static_cast<double>(config.num_paths)};
            const double weight = 2.0 / static_cast<double>(model.geometry_samples);
            std::vector<CVector> gw(count);
            for (int s = 0; s < model.geometry_samples; ++s)
            {
                const PathGeometry g = sample_path_geometries(config, geometry, 1, rng).front();
                if (model.form == UpepForm::exact)
                    for (std::size_t a = 0; a < count; ++a)
                    {
                        gw[a] = CVector::Zero(g.transmit_frm.rows());
                        for (std::size_t k = 0; k < hyp[a].symbols.size(); ++k)
                            gw[a] += g.transmit_frm.col((*hyp[a].pattern)[k]) * hyp[a].symbols[k];
                    }
                for (std::size_t a = 0; a < count; ++a)
                    for (std::size_t b = a + 1; b < count; ++b)
                    {
                        const HypothesisPair pair = make_pair(a, b);
                        const CVector v = model.form == UpepForm::exact ? CVector(gw[a] - gw[b]) : CVector();
                        eval.add(v, &pair, g, n0, weight * distance(a, b), acc);
                    }
            }
        }
        else
        {
            const GridGeometry geometry = make_geometry(config);
            const std::vector<double> rx_eig =
                symmetric_eigenvalues(spatial_correlation(geometry.rx, config.wavelength));
            const RMatrix tx_corr = spatial_correlation(geometry.tx, config.wavelength);
            for (std::size_t a = 0; a < count; ++a)
                for (std::size_t b = a + 1; b < count; ++b)
                {
                    int mult = 1;
                    const std::vector<double> lambda = infinite_eigenvalues(
                        make_pair(a, b), rx_eig, tx_corr, config.channel_gain(), model.form, model.gap_rule, mult);
                    accumulate(acc, lambda, n0, mult, 2.0 * distance(a, b));
                }
        }

        const double norm = 1.0 / (rate * std::ldexp(1.0, rate));
        for (double &v : acc)
            v *= norm;
        return acc;
    }

    int numerical_rank(const RMatrix &m, double rel_tol)
    {
        if (m.size() == 0)
            return 0;
        const Eigen::JacobiSVD<RMatrix> svd(m);
        const RVector &s = svd.singularValues();
        const double cut = rel_tol * s(0);
        int r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            r += s(i) > cut ? 1 : 0;
        return r;
    }

    int diversity_order(const RMatrix &rx_corr, int nt)
    {
        if (rx_corr.rows() != rx_corr.cols())
            throw std::invalid_argument("diversity_order: R must be square");
        if (nt < 1)
            throw std::invalid_argument("diversity_order: Nt must be at least 1");
        return numerical_rank(rx_corr) * nt;
    }
}
