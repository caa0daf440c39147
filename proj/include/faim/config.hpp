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

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace faim
{
    enum class PrmMode
    {
        diagonal, // Xi = diag(alpha_1..alpha_L), alpha_l ~ CN(0, c/L)
        general   // full L x L, alpha_ij ~ CN(0, c/L^2)
    };

    // Exact binomial coefficient. Throws if the value does not fit in 64 bits.
    inline std::uint64_t binomial(int n, int k)
    {
        if (k < 0 || n < 0 || k > n)
            return 0;
        if (k > n - k)
            k = n - k;
        unsigned __int128 r = 1;
        for (int i = 1; i <= k; ++i)
        {
            r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
            if (r > UINT64_MAX)
                throw std::overflow_error("binomial: C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows");
        }
        return static_cast<std::uint64_t>(r);
    }

    // floor(log2 C(P, Nt)): number of bits carried by the position pattern.
    inline int index_bits(int num_positions, int nt)
    {
        const std::uint64_t a = binomial(num_positions, nt);
        if (a == 0)
            throw std::invalid_argument("index_bits: Nt must satisfy 1 <= Nt <= P");
        return static_cast<int>(std::bit_width(a)) - 1;
    }

    inline int log2_exact(int m)
    {
        if (m < 2 || !std::has_single_bit(static_cast<unsigned>(m)))
            throw std::invalid_argument("modulation order must be a power of two >= 2, got " + std::to_string(m));
        return std::countr_zero(static_cast<unsigned>(m));
    }

    struct SystemConfig
    {
        int p1 = 2; // transmit grid, horizontal
        int p2 = 2; // transmit grid, vertical
        int n1 = 2; // receive UPA, horizontal
        int n2 = 2; // receive UPA, vertical
        int nt = 2;
        int modulation_order = 4;
        int num_paths = 15;

        double wavelength = 0.01;           // 28 GHz
        double tx_region_wavelengths = 10.0; // square region side, in wavelengths
        double rx_spacing_wavelengths = 0.5;
        double unit_path_loss = 1e-3; // c0 = -30 dB
        double distance = 25.0;
        double path_loss_exponent = 2.3;
        PrmMode prm_mode = PrmMode::diagonal;

        int num_positions() const { return p1 * p2; }
        int num_rx() const { return n1 * n2; }
        int bits_per_symbol() const { return log2_exact(modulation_order); }
        int symbol_bits() const { return nt * bits_per_symbol(); }
        int pattern_bits() const { return index_bits(num_positions(), nt); }
        int rate_bits() const { return symbol_bits() + pattern_bits(); }

        // c = c0 * d^-varpi
        double channel_gain() const { return unit_path_loss * std::pow(distance, -path_loss_exponent); }

        void validate() const
        {
            auto fail = [](const std::string &what)
            { throw std::invalid_argument("SystemConfig: " + what); };
            if (p1 < 1 || p2 < 1)
                fail("transmit grid dimensions must be positive");
            if (num_positions() > 64)
                fail("at most 64 transmit grid positions are supported");
            if (n1 < 1 || n2 < 1)
                fail("receive array dimensions must be positive");
            if (nt < 1 || nt > num_positions())
                fail("need 1 <= Nt <= P");
            if (num_paths < 1)
                fail("need at least one path");
            if (modulation_order != 2 && modulation_order != 4 && modulation_order != 16 && modulation_order != 64)
                fail("unsupported modulation order " + std::to_string(modulation_order) + " (supported: 2, 4, 16, 64)");
            if (!(wavelength > 0) || !std::isfinite(wavelength))
                fail("wavelength must be positive");
            if (!(tx_region_wavelengths > 0) || !(rx_spacing_wavelengths > 0))
                fail("region extent and receive spacing must be positive");
            if (!(channel_gain() > 0) || !std::isfinite(channel_gain()))
                fail("expected channel gain must be positive");
        }
    };
}
