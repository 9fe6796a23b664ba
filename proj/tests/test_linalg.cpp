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

#include <algorithm>
#include <cmath>
#include <vector>

#include "tetraq/linalg.hpp"
#include "tetraq/rng.hpp"

using tetraq::ComplexMatrix;
using tetraq::cplx;
using tetraq::DensityMatrix;
using tetraq::Rng;

namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
    ComplexMatrix m(r, c);
    for (cplx& e : m.entries)
        e = cplx(2.0 * tetraq::uniform01(rng) - 1.0,
                 2.0 * tetraq::uniform01(rng) - 1.0);
    return m;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const ComplexMatrix m = random_matrix(n, n, rng);
    return tetraq::scale(tetraq::add(m, tetraq::dagger(m)), cplx(0.5, 0.0));
}

std::vector<cplx> random_state(std::size_t n, Rng& rng) {
    std::vector<cplx> v(n);
    double n2 = 0.0;
    for (cplx& e : v) {
        e = cplx(2.0 * tetraq::uniform01(rng) - 1.0,
                 2.0 * tetraq::uniform01(rng) - 1.0);
        n2 += std::norm(e);
    }
    for (cplx& e : v) e /= std::sqrt(n2);
    return v;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = m.at(1, 0) = cplx(1.0, 0.0);
    return m;
}

// sigma_y in the (J, K) convention used project-wide: [[0, i], [-i, 0]].
ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = cplx(0.0, 1.0);
    m.at(1, 0) = cplx(0.0, -1.0);
    return m;
}

// sigma_z = |K><K| - |J><J| = diag(-1, +1).
ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = cplx(-1.0, 0.0);
    m.at(1, 1) = cplx(1.0, 0.0);
    return m;
}

}  // namespace

TEST_CASE("kron identity and basis-flip cases") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(tetraq::max_abs_diff(tetraq::kron(i2, i2),
                               ComplexMatrix::identity(4)) == 0.0);

    // (sigma_x (x) I)|g>|g> = |e>|g>
    const ComplexMatrix op = tetraq::kron(pauli_x(), i2);
    const std::vector<cplx> gg = {cplx(1.0, 0.0), cplx(0.0, 0.0),
                                  cplx(0.0, 0.0), cplx(0.0, 0.0)};
    const auto out = tetraq::matvec(op, gg);
    CHECK(std::abs(out[2] - cplx(1.0, 0.0)) == 0.0);
    CHECK(std::abs(out[0]) + std::abs(out[1]) + std::abs(out[3]) == 0.0);
}

TEST_CASE("kron factors the action on product vectors") {
    Rng rng(11);
    const ComplexMatrix a = random_matrix(2, 2, rng);
    const ComplexMatrix b = random_matrix(2, 2, rng);
    const auto u = random_state(2, rng);
    const auto v = random_state(2, rng);
    std::vector<cplx> uv(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) uv[i * 2 + j] = u[i] * v[j];
    const auto lhs = tetraq::matvec(tetraq::kron(a, b), uv);
    const auto au = tetraq::matvec(a, u);
    const auto bv = tetraq::matvec(b, v);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(lhs[i * 2 + j] - au[i] * bv[j]) < 1e-14);
}

TEST_CASE("kron is associative and guards runaway dimensions") {
    Rng rng(12);
    const ComplexMatrix a = random_matrix(2, 2, rng);
    const ComplexMatrix b = random_matrix(3, 3, rng);
    const ComplexMatrix c = random_matrix(2, 2, rng);
    CHECK(tetraq::max_abs_diff(tetraq::kron(tetraq::kron(a, b), c),
                               tetraq::kron(a, tetraq::kron(b, c))) < 1e-15);

    const ComplexMatrix big = ComplexMatrix::identity(70);
    CHECK_THROWS(tetraq::kron(big, big));  // 4900 > 4096
}

TEST_CASE("matrix exponential fixtures in the project convention") {
    // exp(0 * H) = I
    const ComplexMatrix h = pauli_y();
    CHECK(tetraq::max_abs_diff(tetraq::matrix_exponential(h, cplx(0.0, 0.0)),
                               ComplexMatrix::identity(2)) == 0.0);

    // exp(-i pi sigma_y / 2): |g> -> -|e>, |e> -> |g>
    const double pi = 3.14159265358979323846;
    const ComplexMatrix ry =
        tetraq::matrix_exponential(pauli_y(), cplx(0.0, -pi / 2.0));
    CHECK(std::abs(ry.at(1, 0) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(ry.at(0, 1) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(ry.at(0, 0)) < 1e-15);
    CHECK(std::abs(ry.at(1, 1)) < 1e-15);

    // exp(-i theta sigma_z / 2) = diag(e^{i theta/2}, e^{-i theta/2})
    const double theta = 0.7;
    const ComplexMatrix rz =
        tetraq::matrix_exponential(pauli_z(), cplx(0.0, -theta / 2.0));
    CHECK(std::abs(rz.at(0, 0) - std::exp(cplx(0.0, theta / 2.0))) < 1e-15);
    CHECK(std::abs(rz.at(1, 1) - std::exp(cplx(0.0, -theta / 2.0))) < 1e-15);
    CHECK(std::abs(rz.at(0, 1)) + std::abs(rz.at(1, 0)) == 0.0);
}

TEST_CASE("matrix exponential composes over time and stays unitary") {
    Rng rng(13);
    const ComplexMatrix h = random_hermitian(6, rng);
    const double t1 = 0.83, t2 = 1.91;
    const ComplexMatrix u1 = tetraq::matrix_exponential(h, cplx(0.0, -t1));
    const ComplexMatrix u2 = tetraq::matrix_exponential(h, cplx(0.0, -t2));
    const ComplexMatrix u12 =
        tetraq::matrix_exponential(h, cplx(0.0, -(t1 + t2)));
    CHECK(tetraq::max_abs_diff(tetraq::matmul(u2, u1), u12) < 1e-10);
    CHECK(tetraq::is_unitary(u1));
    CHECK(tetraq::is_unitary(u12));

    CHECK_THROWS(tetraq::matrix_exponential(random_matrix(3, 3, rng),
                                            cplx(0.0, -1.0)));  // not Hermitian
}

TEST_CASE("partial trace fixtures") {
    const double s = 1.0 / std::sqrt(2.0);
    const DensityMatrix bell = DensityMatrix::from_pure(
        {cplx(s, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(s, 0.0)});
    const DensityMatrix half = tetraq::partial_trace(bell, {2, 2}, 0);
    CHECK(tetraq::max_abs_diff(
              half.mat, tetraq::scale(ComplexMatrix::identity(2),
                                      cplx(0.5, 0.0))) < 1e-15);

    // |g>|e>, keep first -> |g><g|
    const DensityMatrix ge = DensityMatrix::from_pure(
        {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)});
    const DensityMatrix g = tetraq::partial_trace(ge, {2, 2}, 0);
    CHECK(std::abs(g.mat.at(0, 0) - cplx(1.0, 0.0)) == 0.0);
    CHECK(std::abs(g.mat.at(1, 1)) == 0.0);
}

TEST_CASE("partial trace preserves trace and the Schmidt spectrum") {
    Rng rng(14);
    for (int rep = 0; rep < 5; ++rep) {
        const DensityMatrix rho = DensityMatrix::from_pure(random_state(4, rng));
        const DensityMatrix r0 = tetraq::partial_trace(rho, {2, 2}, 0);
        const DensityMatrix r1 = tetraq::partial_trace(rho, {2, 2}, 1);
        CHECK(std::abs(tetraq::trace(r0.mat) - cplx(1.0, 0.0)) < 1e-12);
        const auto e0 = tetraq::eigh(r0.mat).values;
        const auto e1 = tetraq::eigh(r1.mat).values;
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(e0[i] == doctest::Approx(e1[i]).epsilon(1e-12));
    }
}

TEST_CASE("partial trace handles a middle factor of three") {
    Rng rng(15);
    const auto a = random_state(2, rng);
    const auto b = random_state(3, rng);
    const auto c = random_state(2, rng);
    std::vector<cplx> abc(12);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 2; ++k)
                abc[(i * 3 + j) * 2 + k] = a[i] * b[j] * c[k];
    const DensityMatrix mid =
        tetraq::partial_trace(DensityMatrix::from_pure(abc), {2, 3, 2}, 1);
    const DensityMatrix want = DensityMatrix::from_pure(b);
    CHECK(tetraq::max_abs_diff(mid.mat, want.mat) < 1e-14);
}

TEST_CASE("eigh reconstructs Hermitian inputs with sorted values") {
    Rng rng(16);
    for (std::size_t n : {2u, 4u, 8u}) {
        const ComplexMatrix a = random_hermitian(n, rng);
        const tetraq::EighResult e = tetraq::eigh(a);
        CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        CHECK(tetraq::is_unitary(e.vectors, 1e-12));
        ComplexMatrix d(n, n);
        for (std::size_t i = 0; i < n; ++i)
            d.at(i, i) = cplx(e.values[i], 0.0);
        const ComplexMatrix back = tetraq::matmul(
            tetraq::matmul(e.vectors, d), tetraq::dagger(e.vectors));
        CHECK(tetraq::max_abs_diff(a, back) < 1e-12);
    }
}

TEST_CASE("eigh handles diagonal and degenerate spectra") {
    ComplexMatrix d(3, 3);
    d.at(0, 0) = cplx(2.0, 0.0);
    d.at(1, 1) = cplx(-1.0, 0.0);
    d.at(2, 2) = cplx(0.5, 0.0);
    const auto e = tetraq::eigh(d);
    CHECK(e.values[0] == doctest::Approx(-1.0));
    CHECK(e.values[1] == doctest::Approx(0.5));
    CHECK(e.values[2] == doctest::Approx(2.0));

    const auto eye = tetraq::eigh(ComplexMatrix::identity(4));
    for (double v : eye.values) CHECK(v == doctest::Approx(1.0));
    CHECK(tetraq::is_unitary(eye.vectors, 1e-12));
}

TEST_CASE("sqrtm_psd squares back and rejects indefinite input") {
    Rng rng(17);
    const ComplexMatrix b = random_matrix(4, 4, rng);
    const ComplexMatrix psd = tetraq::matmul(tetraq::dagger(b), b);
    const ComplexMatrix root = tetraq::sqrtm_psd(psd);
    CHECK(tetraq::is_hermitian(root, 1e-12));
    CHECK(tetraq::max_abs_diff(tetraq::matmul(root, root), psd) < 1e-11);

    ComplexMatrix indef = ComplexMatrix::identity(2);
    indef.at(1, 1) = cplx(-0.5, 0.0);
    CHECK_THROWS(tetraq::sqrtm_psd(indef));
}

TEST_CASE("StateVector validates factor dimensions and norms") {
    CHECK_THROWS(tetraq::StateVector({2, 2}, {cplx(1.0, 0.0)}));  // 4 != 1
    const tetraq::StateVector s({2}, {cplx(0.6, 0.0), cplx(0.0, 0.8)});
    CHECK(s.norm2() == doctest::Approx(1.0));
    CHECK(s.is_normalized());
    const tetraq::StateVector off({2}, {cplx(0.6, 0.0), cplx(0.0, 0.9)});
    CHECK_FALSE(off.is_normalized());
}

TEST_CASE("DensityMatrix enforces Hermiticity, trace, and positivity") {
    ComplexMatrix bad = ComplexMatrix::identity(2);
    bad.at(0, 1) = cplx(0.3, 0.0);  // not Hermitian
    CHECK_THROWS(DensityMatrix(bad));

    ComplexMatrix off_trace =
        tetraq::scale(ComplexMatrix::identity(2), cplx(0.7, 0.0));
    CHECK_THROWS(DensityMatrix(off_trace));

    ComplexMatrix neg(2, 2);
    neg.at(0, 0) = cplx(1.5, 0.0);
    neg.at(1, 1) = cplx(-0.5, 0.0);
    const DensityMatrix rho(neg);
    CHECK_THROWS(rho.validate_psd());

    const DensityMatrix ok = DensityMatrix::from_pure(
        {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(0.0, 1.0 / std::sqrt(2.0))});
    ok.validate_psd();  // must not throw
}

TEST_CASE("DensityMatrix mixture combines with the given weights") {
    const DensityMatrix a =
        DensityMatrix::from_pure({cplx(1.0, 0.0), cplx(0.0, 0.0)});
    const DensityMatrix b =
        DensityMatrix::from_pure({cplx(0.0, 0.0), cplx(1.0, 0.0)});
    const DensityMatrix m = DensityMatrix::mixture({0.25, 0.75}, {a, b});
    CHECK(m.mat.at(0, 0).real() == doctest::Approx(0.25));
    CHECK(m.mat.at(1, 1).real() == doctest::Approx(0.75));
    CHECK_THROWS(DensityMatrix::mixture({0.5, 0.6}, {a, b}));  // sum != 1
}

TEST_CASE("every unitary helper output satisfies the unitarity invariant") {
    Rng rng(18);
    const ComplexMatrix h = random_hermitian(5, rng);
    const ComplexMatrix u = tetraq::matrix_exponential(h, cplx(0.0, -2.2));
    CHECK(tetraq::max_abs_diff(tetraq::matmul(tetraq::dagger(u), u),
                               ComplexMatrix::identity(5)) < 1e-10);
}
