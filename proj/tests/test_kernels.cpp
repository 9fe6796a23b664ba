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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>
#include <vector>

#include "tetraq/kernels.hpp"
#include "tetraq/rng.hpp"

using tetraq::cplx;
using tetraq::KernelTable;
using tetraq::Rng;

namespace {

std::vector<cplx> random_vec(std::size_t n, Rng& rng) {
    std::vector<cplx> v(n);
    for (cplx& e : v)
        e = cplx(2.0 * tetraq::uniform01(rng) - 1.0,
                 2.0 * tetraq::uniform01(rng) - 1.0);
    return v;
}

// Independent oracle: textbook loops in a different accumulation order
// (k-outer) than the scalar kernel uses.
std::vector<cplx> matmul_oracle(const std::vector<cplx>& a,
                                const std::vector<cplx>& b, std::size_t m,
                                std::size_t k, std::size_t n) {
    std::vector<cplx> c(m * n, cplx(0.0, 0.0));
    for (std::size_t kk = 0; kk < k; ++kk)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] += a[i * k + kk] * b[kk * n + j];
    return c;
}

double max_diff(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

void check_table_against_oracle(const KernelTable& t) {
    Rng rng(1234);
    // Sizes straddling SIMD widths: odd/even, below and above one vector.
    const std::size_t sizes[] = {1, 2, 3, 4, 5, 7, 8, 13, 16, 17};
    for (std::size_t m : {1u, 2u, 3u, 4u, 8u})
        for (std::size_t k : {1u, 3u, 4u, 7u})
            for (std::size_t n : {1u, 2u, 5u, 8u}) {
                const auto a = random_vec(m * k, rng);
                const auto b = random_vec(k * n, rng);
                std::vector<cplx> c(m * n, cplx(7.0, 7.0));  // must overwrite
                t.matmul(a.data(), b.data(), c.data(), m, k, n);
                CHECK(max_diff(c, matmul_oracle(a, b, m, k, n)) < 1e-13);

                std::vector<cplx> y(m, cplx(7.0, 7.0));
                t.matvec(a.data(), b.data(), y.data(), m, k);
                const auto yo = matmul_oracle(a, b, m, k, 1);
                CHECK(max_diff(y, yo) < 1e-13);
            }
    for (std::size_t n : sizes) {
        const auto x = random_vec(n, rng);
        auto y = random_vec(n, rng);
        const auto y0 = y;
        const cplx alpha(0.3, -0.7);
        t.axpy(alpha, x.data(), y.data(), n);
        double d = 0.0;
        cplx dot_oracle(0.0, 0.0);
        double abs2_oracle = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d = std::max(d, std::abs(y[i] - (y0[i] + alpha * x[i])));
            dot_oracle += std::conj(x[i]) * y0[i];
            abs2_oracle += std::norm(x[i]);
        }
        CHECK(d < 1e-14);
        CHECK(std::abs(t.dotc(x.data(), y0.data(), n) - dot_oracle) < 1e-13);
        CHECK(t.sum_abs2(x.data(), n) == doctest::Approx(abs2_oracle).epsilon(1e-13));
    }
}

}  // namespace

TEST_CASE("scalar kernels match the textbook oracle") {
    check_table_against_oracle(tetraq::detail::scalar_kernel_table());
}

TEST_CASE("avx2 kernels match the textbook oracle when available") {
    const KernelTable* t = tetraq::detail::avx2_kernel_table_if_supported();
    if (!t) return;  // host without AVX2+FMA: nothing to check
    check_table_against_oracle(*t);
}

TEST_CASE("scalar and avx2 backends agree on identical inputs") {
    const KernelTable* avx2 = tetraq::detail::avx2_kernel_table_if_supported();
    if (!avx2) return;
    const KernelTable& scalar = tetraq::detail::scalar_kernel_table();
    Rng rng(99);
    for (std::size_t dim : {4u, 16u, 96u, 97u}) {
        const auto a = random_vec(dim * dim, rng);
        const auto b = random_vec(dim * dim, rng);
        std::vector<cplx> c1(dim * dim), c2(dim * dim);
        scalar.matmul(a.data(), b.data(), c1.data(), dim, dim, dim);
        avx2->matmul(a.data(), b.data(), c2.data(), dim, dim, dim);
        CHECK(max_diff(c1, c2) < 1e-12 * static_cast<double>(dim));

        CHECK(std::abs(scalar.dotc(a.data(), b.data(), a.size()) -
                       avx2->dotc(a.data(), b.data(), a.size())) <
              1e-11 * static_cast<double>(dim));
        CHECK(scalar.sum_abs2(a.data(), a.size()) ==
              doctest::Approx(avx2->sum_abs2(a.data(), a.size()))
                  .epsilon(1e-12));
    }
}

TEST_CASE("identity matmul leaves the operand unchanged") {
    const KernelTable& t = tetraq::active_kernels();
    Rng rng(5);
    const std::size_t n = 8;
    std::vector<cplx> eye(n * n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) eye[i * n + i] = cplx(1.0, 0.0);
    const auto x = random_vec(n * n, rng);
    std::vector<cplx> y(n * n);
    t.matmul(eye.data(), x.data(), y.data(), n, n, n);
    CHECK(max_diff(x, y) == 0.0);
}

TEST_CASE("backend selection honors availability and restores auto") {
    CHECK(tetraq::select_kernels("scalar"));
    CHECK(std::string(tetraq::kernel_backend_name()) == "scalar");
    CHECK_FALSE(tetraq::select_kernels("not-a-backend"));
    CHECK(std::string(tetraq::kernel_backend_name()) == "scalar");

    const bool have_avx2 =
        tetraq::detail::avx2_kernel_table_if_supported() != nullptr;
    CHECK(tetraq::select_kernels("avx2") == have_avx2);

    CHECK(tetraq::select_kernels("auto"));
    const std::string active = tetraq::kernel_backend_name();
    CHECK(active == (have_avx2 ? "avx2" : "scalar"));
}

TEST_CASE("dotc conjugates the left argument") {
    const KernelTable& t = tetraq::active_kernels();
    const cplx x[1] = {cplx(0.0, 1.0)};
    const cplx y[1] = {cplx(0.0, 1.0)};
    // conj(i) * i = 1, not -1
    CHECK(std::abs(t.dotc(x, y, 1) - cplx(1.0, 0.0)) < 1e-15);
}
