// Copyright 2026 The tetraq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runtime backend selection. The default is the best table the host CPU
// supports; tests pin a backend explicitly via select_kernels().

#include "tetraq/kernels.hpp"

namespace tetraq {

namespace detail {
#if defined(TETRAQ_HAVE_AVX2_TU)
const KernelTable& avx2_kernel_table_impl();
#endif

const KernelTable* avx2_kernel_table_if_supported() {
#if defined(TETRAQ_HAVE_AVX2_TU) && defined(__GNUC__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &avx2_kernel_table_impl();
#endif
    return nullptr;
}
}  // namespace detail

namespace {

const KernelTable* pick_auto() {
    if (const KernelTable* t = detail::avx2_kernel_table_if_supported())
        return t;
    return &detail::scalar_kernel_table();
}

// Written only by select_kernels(); concurrent compute while switching is
// not supported (selection is a test/bench affordance).
const KernelTable* g_active = pick_auto();

}  // namespace

const KernelTable& active_kernels() { return *g_active; }

bool select_kernels(std::string_view name) {
    if (name == "scalar") {
        g_active = &detail::scalar_kernel_table();
        return true;
    }
    if (name == "avx2") {
        if (const KernelTable* t = detail::avx2_kernel_table_if_supported()) {
            g_active = t;
            return true;
        }
        return false;
    }
    if (name == "auto") {
        g_active = pick_auto();
        return true;
    }
    return false;
}

const char* kernel_backend_name() { return g_active->name; }

}  // namespace tetraq
