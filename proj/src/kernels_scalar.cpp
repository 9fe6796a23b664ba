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

// Reference kernels. These are the ground truth the SIMD variants are
// equivalence-tested against, so they stay deliberately plain.

#include "tetraq/kernels.hpp"

namespace tetraq {
namespace {

void matmul_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                   std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* ci = c + i * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] = cplx(0.0, 0.0);
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = a[i * k + l];
            const cplx* bl = b + l * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
        }
    }
}

void matvec_scalar(const cplx* a, const cplx* x, cplx* y, std::size_t m,
                   std::size_t k) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx acc(0.0, 0.0);
        const cplx* ai = a + i * k;
        for (std::size_t l = 0; l < k; ++l) acc += ai[l] * x[l];
        y[i] = acc;
    }
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double sum_abs2_scalar(const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

const KernelTable kScalarTable{matmul_scalar, matvec_scalar, axpy_scalar,
                               dotc_scalar, sum_abs2_scalar, "scalar"};

}  // namespace

namespace detail {
const KernelTable& scalar_kernel_table() { return kScalarTable; }
}  // namespace detail

}  // namespace tetraq
