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

#include <immintrin.h>

#include "faim/simd/kernel_table.hpp"

namespace faim::simd
{
    namespace
    {
        inline double hsum(__m256d v)
        {
            const __m128d lo = _mm256_castpd256_pd128(v);
            const __m128d hi = _mm256_extractf128_pd(v, 1);
            const __m128d s = _mm_add_pd(lo, hi);
            return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
        }

        // n complex values = 2n doubles; one __m256d covers two complex values.
        double squared_norm_avx2(const double *a, std::size_t n)
        {
            const std::size_t len = 2 * n;
            __m256d acc0 = _mm256_setzero_pd();
            __m256d acc1 = _mm256_setzero_pd();
            std::size_t i = 0;
            for (; i + 8 <= len; i += 8)
            {
                const __m256d x0 = _mm256_loadu_pd(a + i);
                const __m256d x1 = _mm256_loadu_pd(a + i + 4);
                acc0 = _mm256_fmadd_pd(x0, x0, acc0);
                acc1 = _mm256_fmadd_pd(x1, x1, acc1);
            }
            for (; i + 4 <= len; i += 4)
            {
                const __m256d x = _mm256_loadu_pd(a + i);
                acc0 = _mm256_fmadd_pd(x, x, acc0);
            }
            double s = hsum(_mm256_add_pd(acc0, acc1));
            for (; i < len; ++i)
                s += a[i] * a[i];
            return s;
        }

        double diff_squared_norm_avx2(const double *a, const double *b, std::size_t n)
        {
            const std::size_t len = 2 * n;
            __m256d acc0 = _mm256_setzero_pd();
            __m256d acc1 = _mm256_setzero_pd();
            std::size_t i = 0;
            for (; i + 8 <= len; i += 8)
            {
                const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
                const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
                acc0 = _mm256_fmadd_pd(d0, d0, acc0);
                acc1 = _mm256_fmadd_pd(d1, d1, acc1);
            }
            for (; i + 4 <= len; i += 4)
            {
                const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
                acc0 = _mm256_fmadd_pd(d, d, acc0);
            }
            double s = hsum(_mm256_add_pd(acc0, acc1));
            for (; i < len; ++i)
            {
                const double d = a[i] - b[i];
                s += d * d;
            }
            return s;
        }

        void subtract_avx2(const double *a, const double *b, double *out, std::size_t n)
        {
            const std::size_t len = 2 * n;
            std::size_t i = 0;
            for (; i + 4 <= len; i += 4)
                _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
            for (; i < len; ++i)
                out[i] = a[i] - b[i];
        }

        void scale_avx2(const double *col, double s_re, double s_im, double *out, std::size_t n)
        {
            const std::size_t len = 2 * n;
            const __m256d re = _mm256_set1_pd(s_re);
            const __m256d im = _mm256_setr_pd(-s_im, s_im, -s_im, s_im);
            std::size_t i = 0;
            for (; i + 4 <= len; i += 4)
            {
                const __m256d x = _mm256_loadu_pd(col + i);
                const __m256d swapped = _mm256_permute_pd(x, 0b0101);
                _mm256_storeu_pd(out + i, _mm256_fmadd_pd(x, re, _mm256_mul_pd(swapped, im)));
            }
            for (; i < len; i += 2)
            {
                const double r = col[i];
                const double m = col[i + 1];
                out[i] = r * s_re - m * s_im;
                out[i + 1] = r * s_im + m * s_re;
            }
        }
    }

    const KernelTable *avx2_kernels()
    {
        static const KernelTable table{squared_norm_avx2, diff_squared_norm_avx2, subtract_avx2, scale_avx2};
        return &table;
    }
}
