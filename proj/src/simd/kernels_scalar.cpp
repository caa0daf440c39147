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

#include "faim/simd/kernels.hpp"

namespace faim::simd
{
    namespace
    {
        double squared_norm_scalar(const double *a, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < 2 * n; ++i)
                s += a[i] * a[i];
            return s;
        }

        double diff_squared_norm_scalar(const double *a, const double *b, std::size_t n)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < 2 * n; ++i)
            {
                const double d = a[i] - b[i];
                s += d * d;
            }
            return s;
        }

        void subtract_scalar(const double *a, const double *b, double *out, std::size_t n)
        {
            for (std::size_t i = 0; i < 2 * n; ++i)
                out[i] = a[i] - b[i];
        }

        void scale_scalar(const double *col, double s_re, double s_im, double *out, std::size_t n)
        {
            for (std::size_t i = 0; i < n; ++i)
            {
                const double re = col[2 * i];
                const double im = col[2 * i + 1];
                out[2 * i] = re * s_re - im * s_im;
                out[2 * i + 1] = re * s_im + im * s_re;
            }
        }
    }

    const KernelTable &scalar_kernels()
    {
        static const KernelTable table{squared_norm_scalar, diff_squared_norm_scalar, subtract_scalar, scale_scalar};
        return table;
    }
}
