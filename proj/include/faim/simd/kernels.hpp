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
#include <span>
#include <string_view>

#include "faim/simd/kernel_table.hpp"
#include "faim/types.hpp"

// Inner-loop kernels over interleaved complex<double> data. Each kernel has a scalar
// reference implementation and, on x86-64 builds, an AVX2/FMA variant. The variant is
// chosen once at first use from the CPU features and the FAIM_SIMD environment
// variable ("scalar" or "avx2"), and can be switched explicitly with set_backend().
namespace faim::simd
{
    enum class Backend
    {
        scalar,
        avx2
    };

    const KernelTable &scalar_kernels();
    // nullptr when the AVX2 variant is not compiled in.
    const KernelTable *avx2_kernels();

    bool cpu_supports_avx2();
    bool backend_available(Backend b);

    Backend active_backend();
    // Throws std::invalid_argument if the backend is not available on this build/CPU.
    void set_backend(Backend b);
    std::string_view backend_name(Backend b);

    const KernelTable &kernels();

    inline const double *raw(std::span<const Complex> v) { return reinterpret_cast<const double *>(v.data()); }
    inline double *raw(std::span<Complex> v) { return reinterpret_cast<double *>(v.data()); }

    inline double squared_norm(std::span<const Complex> a) { return kernels().squared_norm(raw(a), a.size()); }

    inline double diff_squared_norm(std::span<const Complex> a, std::span<const Complex> b)
    {
        return kernels().diff_squared_norm(raw(a), raw(b), a.size());
    }

    inline void subtract(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out)
    {
        kernels().subtract(raw(a), raw(b), raw(out), a.size());
    }

    inline void scale(std::span<const Complex> col, Complex s, std::span<Complex> out)
    {
        kernels().scale(raw(col), s.real(), s.imag(), raw(out), col.size());
    }
}
