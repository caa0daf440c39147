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

#include <cmath>
#include <cstdint>
#include <initializer_list>

#include "faim/types.hpp"

namespace faim
{
    inline std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Independent generator keyed by (seed, path...). Used to give every Monte Carlo
    // trial and every purpose within a trial its own stream.
    inline Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t h = splitmix64(seed);
        for (std::uint64_t p : path)
            h = splitmix64(h ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
        return Rng(h);
    }

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    inline Complex complex_normal(Rng &rng, double variance)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
        const double re = n(rng);
        const double im = n(rng);
        return {re, im};
    }
}
