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

// AVX2+FMA variants of the kernel table. This translation unit is compiled
// with -mavx2 -mfma; the dispatcher only hands it out after a cpuid check.
//
// Layout notes: std::complex<double> is an interleaved (re, im) pair, so a
// __m256d holds two complex values. A complex product against a broadcast
// scalar (ar, ai) is
//   re' = ar*re - ai*im,  im' = ar*im + ai*re
// which maps onto one fmaddsub (subtract in even lanes, add in odd lanes)
// plus one multiply of the pair-swapped operand.

#include <immintrin.h>

#include "tetraq/kernels.hpp"

namespace tetraq {
namespace {

// (re0, im0, re1, im1) -> (im0, re0, im1, re1)
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }
// (re0, im0, re1, im1) -> (re0, re0, re1, re1)
inline __m256d dup_re(__m256d v) { return _mm256_movedup_pd(v); }
// (re0, im0, re1, im1) -> (im0, im0, im1, im1)
inline __m256d dup_im(__m256d v) { return _mm256_permute_pd(v, 0b1111); }

// acc + (ar + i*ai) * b for two complex lanes, ar/ai broadcast.
inline __m256d cplx_fma_bcast(__m256d ar, __m256d ai, __m256d b,
                              __m256d acc) {
    const __m256d t = _mm256_mul_pd(ai, swap_pairs(b));
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, t));
}

void matmul_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                 std::size_t k, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    const std::size_t n2 = n & ~std::size_t(1);
    for (std::size_t i = 0; i < m; ++i) {
        cplx* ci = c + i * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] = cplx(0.0, 0.0);
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = a[i * k + l];
            const __m256d ar = _mm256_set1_pd(ail.real());
            const __m256d ai = _mm256_set1_pd(ail.imag());
            const double* bl = bd + 2 * l * n;
            double* crow = cd + 2 * i * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                const __m256d bv = _mm256_loadu_pd(bl + 2 * j);
                const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, cplx_fma_bcast(ar, ai, bv, cv));
            }
            if (j < n) ci[j] += ail * b[l * n + j];
        }
    }
}

void matvec_avx2(const cplx* a, const cplx* x, cplx* y, std::size_t m,
                 std::size_t k) {
    const double* xd = reinterpret_cast<const double*>(x);
    const std::size_t k2 = k & ~std::size_t(1);
    for (std::size_t i = 0; i < m; ++i) {
        const double* ai = reinterpret_cast<const double*>(a + i * k);
        __m256d acc = _mm256_setzero_pd();
        std::size_t l = 0;
        for (; l < k2; l += 2) {
            const __m256d av = _mm256_loadu_pd(ai + 2 * l);
            const __m256d xv = _mm256_loadu_pd(xd + 2 * l);
            const __m256d t = _mm256_mul_pd(dup_im(av), swap_pairs(xv));
            acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(dup_re(av), xv, t));
        }
        const __m128d s =
            _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
        alignas(16) double out[2];
        _mm_store_pd(out, s);
        cplx acc_s(out[0], out[1]);
        for (; l < k; ++l) acc_s += a[i * k + l] * x[l];
        y[i] = acc_s;
    }
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const std::size_t n2 = n & ~std::size_t(1);
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cplx_fma_bcast(ar, ai, xv, yv));
    }
    if (i < n) y[i] += alpha * x[i];
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    const std::size_t n2 = n & ~std::size_t(1);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        // conj(x)*y: re = xr*yr + xi*yi, im = xr*yi - xi*yr
        const __m256d t = _mm256_mul_pd(dup_im(xv), swap_pairs(yv));
        acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(dup_re(xv), yv, t));
    }
    const __m128d s =
        _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    cplx acc_s(out[0], out[1]);
    for (; i < n; ++i) acc_s += std::conj(x[i]) * y[i];
    return acc_s;
}

double sum_abs2_avx2(const cplx* x, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const std::size_t d = 2 * n;
    const std::size_t d4 = d & ~std::size_t(3);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i < d4; i += 4) {
        const __m256d v = _mm256_loadu_pd(xd + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    const __m128d s =
        _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    double out = _mm_cvtsd_f64(_mm_hadd_pd(s, s));
    for (; i < d; ++i) out += xd[i] * xd[i];
    return out;
}

const KernelTable kAvx2Table{matmul_avx2, matvec_avx2, axpy_avx2, dotc_avx2,
                             sum_abs2_avx2, "avx2"};

}  // namespace

namespace detail {
// Called only from the dispatcher, behind its cpuid check.
const KernelTable& avx2_kernel_table_impl() { return kAvx2Table; }
}  // namespace detail

}  // namespace tetraq
