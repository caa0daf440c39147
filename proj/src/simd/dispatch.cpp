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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "faim/simd/kernels.hpp"

namespace faim::simd
{
#ifndef FAIM_HAVE_AVX2_KERNELS
    const KernelTable *avx2_kernels() { return nullptr; }
#endif

    bool cpu_supports_avx2()
    {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }

    bool backend_available(Backend b)
    {
        switch (b)
        {
        case Backend::scalar:
            return true;
        case Backend::avx2:
            return avx2_kernels() != nullptr && cpu_supports_avx2();
        }
        return false;
    }

    std::string_view backend_name(Backend b)
    {
        return b == Backend::avx2 ? "avx2" : "scalar";
    }

    namespace
    {
        Backend initial_backend()
        {
            if (const char *env = std::getenv("FAIM_SIMD"))
            {
                const std::string v(env);
                if (v == "scalar")
                    return Backend::scalar;
                if (v == "avx2" && backend_available(Backend::avx2))
                    return Backend::avx2;
            }
            return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
        }

        std::atomic<const KernelTable *> &active_table()
        {
            static std::atomic<const KernelTable *> table{
                initial_backend() == Backend::avx2 ? avx2_kernels() : &scalar_kernels()};
            return table;
        }
    }

    Backend active_backend()
    {
        return active_table().load() == &scalar_kernels() ? Backend::scalar : Backend::avx2;
    }

    void set_backend(Backend b)
    {
        if (!backend_available(b))
            throw std::invalid_argument("SIMD backend '" + std::string(backend_name(b)) + "' is not available");
        active_table().store(b == Backend::avx2 ? avx2_kernels() : &scalar_kernels());
    }

    const KernelTable &kernels()
    {
        return *active_table().load(std::memory_order_relaxed);
    }
}
