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
#include <string>
#include <vector>

#include "faim/config.hpp"
#include "faim/types.hpp"

namespace faim
{
    struct Position2
    {
        double x = 0.0;
        double y = 0.0;
    };

    // Transmit grid positions (row-major: linear index = m * P2 + n) and receive UPA
    // element positions (row-major over N1 x N2). Both references sit at the origin.
    struct GridGeometry
    {
        std::vector<Position2> tx;
        std::vector<Position2> rx;
    };

    // Uniform grid over the configured square region, positions at cell centres;
    // receive UPA with uniform spacing starting at the origin.
    GridGeometry make_geometry(const SystemConfig &config);

    // Elevation/azimuth angles (radians, each in [-pi/2, pi/2]) for departure and arrival paths.
    struct PathSet
    {
        std::vector<double> tx_elevation, tx_azimuth;
        std::vector<double> rx_elevation, rx_azimuth;

        std::size_t num_tx_paths() const { return tx_elevation.size(); }
        std::size_t num_rx_paths() const { return rx_elevation.size(); }
    };

    struct PathResponseMatrix
    {
        CMatrix values; // Lr x Lt
        bool diagonal = true;
    };

    struct ChannelRealization
    {
        PathSet paths;
        PathResponseMatrix prm;
        CMatrix receive_frm;  // F, Lr x Nr
        CMatrix transmit_frm; // G, Lt x P (column I is g(t_I))
        CMatrix h;            // Nr x P
    };

    // exp(j 2pi/lambda (x cos(theta) sin(phi) + y sin(theta)))
    Complex steering_phase(Position2 pos, double elevation, double azimuth, double wavelength);

    CVector build_receive_frv(Position2 pos, const PathSet &paths, double wavelength);
    CVector build_transmit_frv(Position2 pos, const PathSet &paths, double wavelength);

    // Columns are FRVs of the given positions.
    CMatrix build_receive_frm(std::span<const Position2> rx, const PathSet &paths, double wavelength);
    CMatrix build_transmit_frm(std::span<const Position2> tx, const PathSet &paths, double wavelength);

    // Isotropic half-space arrivals: theta = asin(U[-1,1]) (pdf cos(theta)/2), phi ~ U[-pi/2, pi/2].
    // Departures are drawn the same way, independently.
    PathSet sample_path_set(const SystemConfig &config, Rng &rng);

    PathResponseMatrix sample_path_response_matrix(const SystemConfig &config, Rng &rng);

    // h(t) = F^H Xi g(t)
    CVector channel_vector(Position2 tx_pos, const CMatrix &receive_frm, const CMatrix &prm, const PathSet &paths,
                           double wavelength);

    ChannelRealization build_channel_matrix(const SystemConfig &config, const GridGeometry &geometry, PathSet paths,
                                            PathResponseMatrix prm);

    // Paths first, then the PRM, both from `rng`.
    ChannelRealization draw_channel(const SystemConfig &config, const GridGeometry &geometry, Rng &rng);

    // [R]_ij = sin(k d_ij) / (k d_ij), k = 2 pi / lambda, unit diagonal.
    RMatrix spatial_correlation(std::span<const Position2> positions, double wavelength);

    // sqrt(1 - xi^2) H + xi dH, dH a fresh independent realization on the same geometry.
    CMatrix corrupt_csi(const CMatrix &h, double xi, const SystemConfig &config, const GridGeometry &geometry,
                        Rng &rng);

    // Structured-text (JSON) dump of geometry and realization for debugging.
    std::string realization_to_json(const SystemConfig &config, const GridGeometry &geometry,
                                    const ChannelRealization &realization);
}
