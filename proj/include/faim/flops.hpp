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

#include <vector>

namespace faim
{
    // Real-valued flop counts for complex operands.
    double product_flops(double m, double n, double p); // (m x n)(n x p): 2 m p (4n - 1)
    double inverse_flops(double n);                     // n x n: n^3/2 + 3n/2
    double squared_norm_flops(double n);                // 2n
    double vector_add_flops(double n);                  // 4n - 1

    enum class FlopOp
    {
        matrix_product,
        inverse,
        squared_norm,
        vector_add
    };

    // dims: {m, n, p} for a product, {n} otherwise.
    double flop_cost(FlopOp op, const std::vector<double> &dims);

    // K M^Nt (12 Nr Nt + 2 Nr)
    double ml_flops(int nt, int nr, int num_positions, int modulation_order);

    enum class FlopAccounting
    {
        pre_prune, // each iteration charged at the candidate count it started with
        post_prune // each iteration charged at the count left after its pruning step
    };

    // Per-iteration cost 24 Nr^2 P* + 4 P*^2 (2 Nr - 1) + 12 Nr P* + Nr^3/2 + 3 Nr/2,
    // summed over max_iterations with P* shrinking by prune_counts[t] after iteration t.
    double sbl_iteration_flops(double nr, double scale);
    double sbl_flops(int nr, int num_positions, const std::vector<int> &prune_counts, int max_iterations,
                     FlopAccounting accounting = FlopAccounting::pre_prune);
}
