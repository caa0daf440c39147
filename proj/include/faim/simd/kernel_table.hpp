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

#include <cstddef>

// Kept free of other project and library headers: the AVX2 translation unit includes
// only this file, so no inline code gets compiled there with a wider instruction set.
namespace faim::simd
{
    struct KernelTable
    {
        // sum |a_i|^2 over n complex values
        double (*squared_norm)(const double *a, std::size_t n);
        // sum |a_i - b_i|^2
        double (*diff_squared_norm)(const double *a, const double *b, std::size_t n);
        // out_i = a_i - b_i
        void (*subtract)(const double *a, const double *b, double *out, std::size_t n);
        // out_i = col_i * s
        void (*scale)(const double *col, double s_re, double s_im, double *out, std::size_t n);
    };

    const KernelTable *avx2_kernels();
}
