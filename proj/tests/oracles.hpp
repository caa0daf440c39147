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

// Independent reference implementations used only by the tests. They avoid the library's
// kernels and solvers: plain loops over std::complex, hand-written elimination.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "faim/analysis.hpp"
#include "faim/channel.hpp"
#include "faim/detect.hpp"
#include "faim/modem.hpp"
#include "faim/rng.hpp"

namespace oracle
{
    using faim::Complex;
    using Dense = std::vector<std::vector<Complex>>;

    inline Dense to_dense(const faim::CMatrix &m)
    {
        Dense d(static_cast<std::size_t>(m.rows()), std::vector<Complex>(static_cast<std::size_t>(m.cols())));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
        return d;
    }

    // Gauss-Jordan with partial pivoting.
    inline Dense invert(Dense a)
    {
        const std::size_t n = a.size();
        Dense inv(n, std::vector<Complex>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            inv[i][i] = 1.0;
        for (std::size_t col = 0; col < n; ++col)
        {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                    piv = r;
            if (std::abs(a[piv][col]) == 0.0)
                throw std::runtime_error("oracle::invert: singular");
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            const Complex d = a[col][col];
            for (std::size_t j = 0; j < n; ++j)
            {
                a[col][j] /= d;
                inv[col][j] /= d;
            }
            for (std::size_t r = 0; r < n; ++r)
            {
                if (r == col)
                    continue;
                const Complex f = a[r][col];
                if (f == 0.0)
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
        return inv;
    }

    struct SblPosterior
    {
        std::vector<Complex> mu;
        Dense sigma;
    };

    // Information form: Sigma = (Gamma^-1 + H^H H / N0)^-1, mu = Sigma H^H y / N0.
    inline SblPosterior sbl_posterior(const faim::CMatrix &h, const faim::CVector &y, const std::vector<double> &gamma,
                                      double n0)
    {
        const std::size_t nr = static_cast<std::size_t>(h.rows());
        const std::size_t p = static_cast<std::size_t>(h.cols());
        const Dense hd = to_dense(h);
        Dense prec(p, std::vector<Complex>(p, 0.0));
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
            {
                Complex s = 0.0;
                for (std::size_t r = 0; r < nr; ++r)
                    s += std::conj(hd[r][i]) * hd[r][j];
                prec[i][j] = s / n0;
            }
        for (std::size_t i = 0; i < p; ++i)
            prec[i][i] += 1.0 / gamma[i];
        SblPosterior out;
        out.sigma = invert(prec);
        std::vector<Complex> hy(p, 0.0);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t r = 0; r < nr; ++r)
                hy[i] += std::conj(hd[r][i]) * y(static_cast<Eigen::Index>(r)) / n0;
        out.mu.assign(p, 0.0);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
                out.mu[i] += out.sigma[i][j] * hy[j];
        return out;
    }

    struct MlWinner
    {
        std::size_t entry = 0;
        std::vector<unsigned> labels;
        double metric = std::numeric_limits<double>::infinity();
    };

    // Tabulates ||y - H x||^2 for every hypothesis in enumeration order; strict < keeps the first.
    inline MlWinner ml_exhaustive(const faim::CVector &y, const faim::CMatrix &h, const faim::Codebook &cb,
                                  const faim::Constellation &con)
    {
        const std::size_t nt = static_cast<std::size_t>(cb.nt());
        const std::size_t m = static_cast<std::size_t>(con.order());
        std::size_t tuples = 1;
        for (std::size_t k = 0; k < nt; ++k)
            tuples *= m;
        MlWinner best;
        for (std::size_t e = 0; e < cb.size(); ++e)
            for (std::size_t t = 0; t < tuples; ++t)
            {
                std::vector<unsigned> labels(nt);
                std::size_t rest = t;
                for (std::size_t k = nt; k-- > 0;)
                {
                    labels[k] = static_cast<unsigned>(rest % m);
                    rest /= m;
                }
                double metric = 0.0;
                for (Eigen::Index r = 0; r < h.rows(); ++r)
                {
                    Complex v = y(r);
                    for (std::size_t k = 0; k < nt; ++k)
                        v -= h(r, cb.pattern(e)[k]) * con.point(labels[k]);
                    metric += std::norm(v);
                }
                if (metric < best.metric)
                    best = {e, labels, metric};
            }
        return best;
    }

    inline double cpep(double z, double n0) { return std::exp(-z / (4.0 * n0)) / 12.0 + std::exp(-z / (3.0 * n0)) / 4.0; }

    // Direct sampling of the diagonal or general PRM on fixed geometries; Z = ||F^H Xi G w||^2.
    inline double finite_path_monte_carlo(const faim::HypothesisPair &pair,
                                          const std::vector<faim::PathGeometry> &geoms,
                                          const faim::SystemConfig &cfg, double n0, int draws_per_geometry,
                                          std::mt19937_64 &rng)
    {
        const double c = cfg.channel_gain();
        double acc = 0.0;
        long n = 0;
        for (const auto &g : geoms)
        {
            const auto l = static_cast<std::size_t>(g.receive_frm.rows());
            const faim::CVector w = pair.position_weights(static_cast<int>(g.transmit_frm.cols()));
            const faim::CVector v = g.transmit_frm * w;
            for (int d = 0; d < draws_per_geometry; ++d)
            {
                faim::CVector u(static_cast<Eigen::Index>(l));
                if (cfg.prm_mode == faim::PrmMode::diagonal)
                    for (std::size_t i = 0; i < l; ++i)
                        u(static_cast<Eigen::Index>(i)) =
                            faim::complex_normal(rng, c / static_cast<double>(l)) * v(static_cast<Eigen::Index>(i));
                else
                    for (std::size_t i = 0; i < l; ++i)
                    {
                        Complex s = 0.0;
                        for (std::size_t j = 0; j < l; ++j)
                            s += faim::complex_normal(rng, c / static_cast<double>(l * l)) *
                                 v(static_cast<Eigen::Index>(j));
                        u(static_cast<Eigen::Index>(i)) = s;
                    }
                const double z = (g.receive_frm.adjoint() * u).squaredNorm();
                acc += cpep(z, n0);
                ++n;
            }
        }
        return acc / static_cast<double>(n);
    }

    // A with A A^T = m, for symmetric PSD m.
    inline faim::RMatrix psd_sqrt(const faim::RMatrix &m)
    {
        const Eigen::SelfAdjointEigenSolver<faim::RMatrix> eig(m);
        return eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    }

    // Exact model: vec(H) ~ CN(0, c T (x) R) with T the transmit and R the receive correlation.
    inline double infinite_path_monte_carlo(const faim::HypothesisPair &pair, const faim::RMatrix &rx_corr,
                                            const faim::RMatrix &tx_corr, double c, double n0, int draws,
                                            std::mt19937_64 &rng)
    {
        const faim::RMatrix a = psd_sqrt(rx_corr);
        const faim::RMatrix b = psd_sqrt(tx_corr);
        const faim::CVector w = pair.position_weights(static_cast<int>(tx_corr.rows()));
        double acc = 0.0;
        for (int d = 0; d < draws; ++d)
        {
            faim::CMatrix z(rx_corr.rows(), tx_corr.rows());
            for (Eigen::Index i = 0; i < z.rows(); ++i)
                for (Eigen::Index j = 0; j < z.cols(); ++j)
                    z(i, j) = faim::complex_normal(rng, c);
            const faim::CMatrix h = a.cast<Complex>() * z * b.transpose().cast<Complex>();
            acc += cpep((h * w).squaredNorm(), n0);
        }
        return acc / draws;
    }

    // Scalar-gap model: Nt independent h_k ~ CN(0, c R), Z = |ds|^2 sum_k ||h_k||^2.
    inline double scalar_gap_monte_carlo(double gap, int nt, const faim::RMatrix &rx_corr, double c, double n0,
                                         int draws, std::mt19937_64 &rng)
    {
        const faim::RMatrix a = psd_sqrt(rx_corr);
        double acc = 0.0;
        for (int d = 0; d < draws; ++d)
        {
            double z = 0.0;
            for (int k = 0; k < nt; ++k)
            {
                faim::CVector u(rx_corr.rows());
                for (Eigen::Index i = 0; i < u.size(); ++i)
                    u(i) = faim::complex_normal(rng, c);
                z += (a.cast<Complex>() * u).squaredNorm();
            }
            acc += cpep(gap * z, n0);
        }
        return acc / draws;
    }

    inline faim::HypothesisPair random_pair(const faim::SystemConfig &cfg, std::mt19937_64 &rng)
    {
        const auto &con = faim::constellation(cfg.modulation_order);
        std::uniform_int_distribution<unsigned> sym(0, static_cast<unsigned>(con.order() - 1));
        const std::uint64_t total = faim::binomial(cfg.num_positions(), cfg.nt);
        std::uniform_int_distribution<std::uint64_t> pat(0, total - 1);
        for (;;)
        {
            faim::HypothesisPair p;
            p.pattern = faim::unrank_combination(pat(rng), cfg.num_positions(), cfg.nt);
            p.other_pattern = (rng() & 1u) ? p.pattern : faim::unrank_combination(pat(rng), cfg.num_positions(), cfg.nt);
            for (int k = 0; k < cfg.nt; ++k)
            {
                p.symbols.push_back(con.point(sym(rng)));
                p.other_symbols.push_back(con.point(sym(rng)));
            }
            if (!p.identical())
                return p;
        }
    }
}
