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

#ifndef TETRAQ_KERNELS_HPP
#define TETRAQ_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string_view>

namespace tetraq {

using cplx = std::complex<double>;

// Hot inner loops of the dense complex algebra, provided as a table of
// function pointers so a SIMD build can be swapped in at runtime. All
// matrices are row-major and may not alias their outputs.
struct KernelTable {
    // c(m x n) = a(m x k) * b(k x n)
    void (*matmul)(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                   std::size_t k, std::size_t n);
    // y(m) = a(m x k) * x(k)
    void (*matvec)(const cplx* a, const cplx* x, cplx* y, std::size_t m,
                   std::size_t k);
    // y += alpha * x
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // sum_i conj(x_i) * y_i
    cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
    // sum_i |x_i|^2
    double (*sum_abs2)(const cplx* x, std::size_t n);
    const char* name;
};

// Currently active table. Never null; defaults to the best backend the
// host supports ("auto" selection at startup).
const KernelTable& active_kernels();

// Force a backend: "scalar", "avx2", or "auto". Returns false (and leaves
// the selection unchanged) if the named backend is unavailable. Intended
// for tests and benchmarks; not thread-safe against concurrent compute.
bool select_kernels(std::string_view name);

// Name of the active backend ("scalar" or "avx2").
const char* kernel_backend_name();

namespace detail {
const KernelTable& scalar_kernel_table();
// Null when the binary or the host CPU lacks AVX2+FMA support.
const KernelTable* avx2_kernel_table_if_supported();
}  // namespace detail

}  // namespace tetraq

#endif  // TETRAQ_KERNELS_HPP
