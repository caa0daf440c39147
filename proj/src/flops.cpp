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

#include "faim/flops.hpp"

#include <cmath>
#include <stdexcept>

#include "faim/config.hpp"

namespace faim
{
    double product_flops(double m, double n, double p) { return 2.0 * m * p * (4.0 * n - 1.0); }
    double inverse_flops(double n) { return n * n * n / 2.0 + 1.5 * n; }
    double squared_norm_flops(double n) { return 2.0 * n; }
    double vector_add_flops(double n) { return 4.0 * n - 1.0; }

    double flop_cost(FlopOp op, const std::vector<double> &dims)
    {
        for (double d : dims)
            if (!(d > 0))
                throw std::invalid_argument("flop_cost: dimensions must be positive");
        switch (op)
        {
        case FlopOp::matrix_product:
            if (dims.size() != 3)
                throw std::invalid_argument("flop_cost: a product needs {m, n, p}");
            return product_flops(dims[0], dims[1], dims[2]);
        case FlopOp::inverse:
        case FlopOp::squared_norm:
        case FlopOp::vector_add:
            if (dims.size() != 1)
                throw std::invalid_argument("flop_cost: expected a single dimension");
            if (op == FlopOp::inverse)
                return inverse_flops(dims[0]);
            if (op == FlopOp::squared_norm)
                return squared_norm_flops(dims[0]);
            return vector_add_flops(dims[0]);
        }
        throw std::invalid_argument("flop_cost: unknown operation");
    }

    double ml_flops(int nt, int nr, int num_positions, int modulation_order)
    {
        const double k = std::ldexp(1.0, index_bits(num_positions, nt));
        const double hypotheses = k * std::pow(static_cast<double>(modulation_order), nt);
        return hypotheses * (12.0 * nr * nt + 2.0 * nr);
    }

    double sbl_iteration_flops(double nr, double scale)
    {
        return 24.0 * nr * nr * scale + 4.0 * scale * scale * (2.0 * nr - 1.0) + 12.0 * nr * scale +
               nr * nr * nr / 2.0 + 1.5 * nr;
    }

    double sbl_flops(int nr, int num_positions, const std::vector<int> &prune_counts, int max_iterations,
                     FlopAccounting accounting)
    {
        if (nr < 1 || num_positions < 1 || max_iterations < 1)
            throw std::invalid_argument("sbl_flops: dimensions must be positive");
        if (static_cast<int>(prune_counts.size()) > max_iterations)
            throw std::invalid_argument("sbl_flops: more pruning iterations than iterations");
        double total = 0.0;
        int scale = num_positions;
        for (int t = 0; t < max_iterations; ++t)
        {
            const int after = t < static_cast<int>(prune_counts.size()) ? scale - prune_counts[static_cast<std::size_t>(t)] : scale;
            if (after < 1)
                throw std::invalid_argument("sbl_flops: schedule prunes every candidate");
            total += sbl_iteration_flops(nr, accounting == FlopAccounting::pre_prune ? scale : after);
            scale = after;
        }
        return total;
    }
}
