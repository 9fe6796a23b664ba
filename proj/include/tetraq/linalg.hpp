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

#ifndef TETRAQ_LINALG_HPP
#define TETRAQ_LINALG_HPP

#include <cstddef>
#include <vector>

#include "tetraq/kernels.hpp"
#include "tetraq/tolerances.hpp"

namespace tetraq {

// Dense row-major complex matrix. Values are immutable by convention once
// built; all operations below return fresh matrices.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> entries;  // rows * cols, row-major

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r * c, cplx(0.0, 0.0)) {}

    cplx& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const cplx& at(std::size_t i, std::size_t j) const {
        return entries[i * cols + j];
    }

    static ComplexMatrix identity(std::size_t n);
};

// State over a composite Hilbert space; factor_dims is fixed at
// construction and the amplitude length must equal its product.
struct StateVector {
    std::vector<std::size_t> factor_dims;
    std::vector<cplx> amps;

    StateVector() = default;
    StateVector(std::vector<std::size_t> dims, std::vector<cplx> amplitudes);

    std::size_t dim() const { return amps.size(); }
    double norm2() const;
    bool is_normalized(double tol = kTol.normalization) const;
};

// Hermitian, unit-trace matrix. The constructor enforces Hermiticity and
// trace; positivity is checked by validate_psd() (it needs an eigensolve).
struct DensityMatrix {
    std::size_t dim = 0;
    ComplexMatrix mat;

    DensityMatrix() = default;
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix from_pure(const std::vector<cplx>& amps);
    // sum_k weights[k] * parts[k]; weights must be a probability vector.
    static DensityMatrix mixture(const std::vector<double>& weights,
                                 const std::vector<DensityMatrix>& parts);

    // Throws if any eigenvalue is below the PSD floor.
    void validate_psd(double floor = kTol.psd_floor) const;
};

// ---- elementary operations (kernel-dispatched where it matters) ----

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& x);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx factor);
cplx trace(const ComplexMatrix& a);
cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y);
// |u><v|
ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double tol = kTol.structural);
bool is_unitary(const ComplexMatrix& a, double tol = kTol.structural);

// Kronecker product. Refuses results whose row or column count exceeds
// max_dim (guards against runaway tensor chains).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = kTol.max_total_dim);

// exp(scale * h) for Hermitian h, by scaling-and-squaring with a Taylor
// series. Throws on non-square or non-Hermitian input.
ComplexMatrix matrix_exponential(const ComplexMatrix& h, cplx scale);

// Trace out every factor except `keep`. factor_dims must multiply to
// rho.dim; the result keeps trace 1.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& factor_dims,
                            std::size_t keep);

// Eigendecomposition of a Hermitian matrix (cyclic complex Jacobi):
// a = vectors * diag(values) * vectors^dagger, values ascending, vectors
// orthonormal columns.
struct EighResult {
    std::vector<double> values;
    ComplexMatrix vectors;  // column k pairs with values[k]
};
EighResult eigh(const ComplexMatrix& a);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues below the PSD floor throw; tiny negatives clamp to zero.
ComplexMatrix sqrtm_psd(const ComplexMatrix& a,
                        double floor = kTol.psd_floor);

}  // namespace tetraq

#endif  // TETRAQ_LINALG_HPP
