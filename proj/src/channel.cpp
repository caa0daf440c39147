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

#include "faim/channel.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "faim/rng.hpp"

namespace faim
{
    GridGeometry make_geometry(const SystemConfig &config)
    {
        config.validate();
        GridGeometry g;
        const double side = config.tx_region_wavelengths * config.wavelength;
        const double dx = side / config.p1;
        const double dy = side / config.p2;
        g.tx.reserve(static_cast<std::size_t>(config.num_positions()));
        for (int m = 0; m < config.p1; ++m)
            for (int n = 0; n < config.p2; ++n)
                g.tx.push_back({(m + 0.5) * dx, (n + 0.5) * dy});

        const double spacing = config.rx_spacing_wavelengths * config.wavelength;
        g.rx.reserve(static_cast<std::size_t>(config.num_rx()));
        for (int p = 0; p < config.n1; ++p)
            for (int q = 0; q < config.n2; ++q)
                g.rx.push_back({p * spacing, q * spacing});
        return g;
    }

    Complex steering_phase(Position2 pos, double elevation, double azimuth, double wavelength)
    {
        if (!std::isfinite(pos.x) || !std::isfinite(pos.y) || !std::isfinite(elevation) || !std::isfinite(azimuth) ||
            !std::isfinite(wavelength))
            throw std::invalid_argument("steering_phase: non-finite input");
        if (!(wavelength > 0))
            throw std::invalid_argument("steering_phase: wavelength must be positive");
        const double k = 2.0 * pi / wavelength;
        const double phase = k * (pos.x * std::cos(elevation) * std::sin(azimuth) + pos.y * std::sin(elevation));
        return std::polar(1.0, phase);
    }

    namespace
    {
        CVector frv(Position2 pos, const std::vector<double> &elevation, const std::vector<double> &azimuth,
                    double wavelength)
        {
            if (elevation.empty() || elevation.size() != azimuth.size())
                throw std::invalid_argument("field-response vector: path set is empty or inconsistent");
            CVector v(static_cast<Eigen::Index>(elevation.size()));
            for (std::size_t i = 0; i < elevation.size(); ++i)
                v(static_cast<Eigen::Index>(i)) = steering_phase(pos, elevation[i], azimuth[i], wavelength);
            return v;
        }
    }

    CVector build_receive_frv(Position2 pos, const PathSet &paths, double wavelength)
    {
        return frv(pos, paths.rx_elevation, paths.rx_azimuth, wavelength);
    }

    CVector build_transmit_frv(Position2 pos, const PathSet &paths, double wavelength)
    {
        return frv(pos, paths.tx_elevation, paths.tx_azimuth, wavelength);
    }

    CMatrix build_receive_frm(std::span<const Position2> rx, const PathSet &paths, double wavelength)
    {
        CMatrix f(static_cast<Eigen::Index>(paths.num_rx_paths()), static_cast<Eigen::Index>(rx.size()));
        for (std::size_t i = 0; i < rx.size(); ++i)
            f.col(static_cast<Eigen::Index>(i)) = build_receive_frv(rx[i], paths, wavelength);
        return f;
    }

    CMatrix build_transmit_frm(std::span<const Position2> tx, const PathSet &paths, double wavelength)
    {
        CMatrix g(static_cast<Eigen::Index>(paths.num_tx_paths()), static_cast<Eigen::Index>(tx.size()));
        for (std::size_t i = 0; i < tx.size(); ++i)
            g.col(static_cast<Eigen::Index>(i)) = build_transmit_frv(tx[i], paths, wavelength);
        return g;
    }

    PathSet sample_path_set(const SystemConfig &config, Rng &rng)
    {
        const auto l = static_cast<std::size_t>(config.num_paths);
        std::uniform_real_distribution<double> sine(-1.0, 1.0);
        std::uniform_real_distribution<double> azimuth(-pi / 2.0, pi / 2.0);
        PathSet p;
        p.tx_elevation.resize(l);
        p.tx_azimuth.resize(l);
        p.rx_elevation.resize(l);
        p.rx_azimuth.resize(l);
        for (std::size_t j = 0; j < l; ++j)
        {
            p.tx_elevation[j] = std::asin(sine(rng));
            p.tx_azimuth[j] = azimuth(rng);
        }
        for (std::size_t i = 0; i < l; ++i)
        {
            p.rx_elevation[i] = std::asin(sine(rng));
            p.rx_azimuth[i] = azimuth(rng);
        }
        return p;
    }

    PathResponseMatrix sample_path_response_matrix(const SystemConfig &config, Rng &rng)
    {
        const Eigen::Index l = config.num_paths;
        const double c = config.channel_gain();
        PathResponseMatrix prm;
        prm.values = CMatrix::Zero(l, l);
        if (config.prm_mode == PrmMode::diagonal)
        {
            prm.diagonal = true;
            for (Eigen::Index i = 0; i < l; ++i)
                prm.values(i, i) = complex_normal(rng, c / static_cast<double>(l));
        }
        else
        {
            prm.diagonal = false;
            const double var = c / static_cast<double>(l * l);
            for (Eigen::Index j = 0; j < l; ++j)
                for (Eigen::Index i = 0; i < l; ++i)
                    prm.values(i, j) = complex_normal(rng, var);
        }
        return prm;
    }

    CVector channel_vector(Position2 tx_pos, const CMatrix &receive_frm, const CMatrix &prm, const PathSet &paths,
                           double wavelength)
    {
        const CVector g = build_transmit_frv(tx_pos, paths, wavelength);
        if (prm.cols() != g.size() || prm.rows() != receive_frm.rows())
            throw std::invalid_argument("channel_vector: dimension mismatch between F, Xi and g");
        return receive_frm.adjoint() * (prm * g);
    }

    ChannelRealization build_channel_matrix(const SystemConfig &config, const GridGeometry &geometry, PathSet paths,
                                            PathResponseMatrix prm)
    {
        ChannelRealization r;
        r.receive_frm = build_receive_frm(geometry.rx, paths, config.wavelength);
        r.transmit_frm = build_transmit_frm(geometry.tx, paths, config.wavelength);
        if (prm.values.rows() != r.receive_frm.rows() || prm.values.cols() != r.transmit_frm.rows())
            throw std::invalid_argument("build_channel_matrix: PRM dimensions do not match the path set");
        r.h = r.receive_frm.adjoint() * (prm.values * r.transmit_frm);
        r.paths = std::move(paths);
        r.prm = std::move(prm);
        return r;
    }

    ChannelRealization draw_channel(const SystemConfig &config, const GridGeometry &geometry, Rng &rng)
    {
        PathSet paths = sample_path_set(config, rng);
        PathResponseMatrix prm = sample_path_response_matrix(config, rng);
        return build_channel_matrix(config, geometry, std::move(paths), std::move(prm));
    }

    RMatrix spatial_correlation(std::span<const Position2> positions, double wavelength)
    {
        const double k = 2.0 * pi / wavelength;
        const auto n = static_cast<Eigen::Index>(positions.size());
        RMatrix r(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            r(i, i) = 1.0;
            for (Eigen::Index j = i + 1; j < n; ++j)
            {
                const double dx = positions[static_cast<std::size_t>(i)].x - positions[static_cast<std::size_t>(j)].x;
                const double dy = positions[static_cast<std::size_t>(i)].y - positions[static_cast<std::size_t>(j)].y;
                const double a = k * std::hypot(dx, dy);
                double v = a == 0.0 ? 1.0 : std::sin(a) / a;
                // sin(m pi) evaluates to ~1e-16, not 0; snap exact half-wavelength multiples.
                const double half_waves = a / pi;
                if (a != 0.0 && std::abs(half_waves - std::round(half_waves)) < 1e-12)
                    v = 0.0;
                r(i, j) = v;
                r(j, i) = v;
            }
        }
        return r;
    }

    CMatrix corrupt_csi(const CMatrix &h, double xi, const SystemConfig &config, const GridGeometry &geometry,
                        Rng &rng)
    {
        if (!(xi >= 0.0 && xi <= 1.0))
            throw std::invalid_argument("corrupt_csi: error coefficient must lie in [0, 1]");
        if (xi == 0.0)
            return h;
        const ChannelRealization delta = draw_channel(config, geometry, rng);
        if (delta.h.rows() != h.rows() || delta.h.cols() != h.cols())
            throw std::invalid_argument("corrupt_csi: channel does not match the configured geometry");
        if (xi == 1.0)
            return delta.h;
        return std::sqrt(1.0 - xi * xi) * h + xi * delta.h;
    }

    std::string realization_to_json(const SystemConfig &config, const GridGeometry &geometry,
                                    const ChannelRealization &realization)
    {
        using nlohmann::json;
        auto positions = [](const std::vector<Position2> &ps)
        {
            json a = json::array();
            for (const auto &p : ps)
                a.push_back({p.x, p.y});
            return a;
        };
        auto cmatrix = [](const CMatrix &m)
        {
            json rows = json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i)
            {
                json row = json::array();
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    row.push_back({m(i, j).real(), m(i, j).imag()});
                rows.push_back(row);
            }
            return rows;
        };

        json j;
        j["config"] = {{"p1", config.p1}, {"p2", config.p2}, {"n1", config.n1}, {"n2", config.n2},
                       {"nt", config.nt}, {"m", config.modulation_order}, {"paths", config.num_paths},
                       {"wavelength", config.wavelength}, {"channel_gain", config.channel_gain()}};
        j["geometry"] = {{"tx", positions(geometry.tx)}, {"rx", positions(geometry.rx)}};
        j["paths"] = {{"tx_elevation", realization.paths.tx_elevation},
                      {"tx_azimuth", realization.paths.tx_azimuth},
                      {"rx_elevation", realization.paths.rx_elevation},
                      {"rx_azimuth", realization.paths.rx_azimuth}};
        j["prm"] = cmatrix(realization.prm.values);
        j["prm_diagonal"] = realization.prm.diagonal;
        j["h"] = cmatrix(realization.h);
        return j.dump(2);
    }
}
