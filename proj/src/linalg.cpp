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

#include "tetraq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tetraq {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cplx(1.0, 0.0);
    return m;
}

StateVector::StateVector(std::vector<std::size_t> dims,
                         std::vector<cplx> amplitudes)
    : factor_dims(std::move(dims)), amps(std::move(amplitudes)) {
    require(!factor_dims.empty(), "StateVector: empty factor list");
    std::size_t prod = 1;
    for (std::size_t d : factor_dims) {
        require(d > 0, "StateVector: zero factor dimension");
        prod *= d;
    }
    require(prod == amps.size(),
            "StateVector: amplitude count does not match factor dimensions");
}

double StateVector::norm2() const {
    return active_kernels().sum_abs2(amps.data(), amps.size());
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm2() - 1.0) <= tol;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : dim(m.rows), mat(std::move(m)) {
    require(mat.rows == mat.cols, "DensityMatrix: non-square matrix");
    require(is_hermitian(mat, kTol.normalization),
            "DensityMatrix: not Hermitian within tolerance");
    require(std::abs(trace(mat).real() - 1.0) <= kTol.normalization &&
                std::abs(trace(mat).imag()) <= kTol.normalization,
            "DensityMatrix: trace is not 1 within tolerance");
}

DensityMatrix DensityMatrix::from_pure(const std::vector<cplx>& amps) {
    const double n2 = active_kernels().sum_abs2(amps.data(), amps.size());
    require(std::abs(n2 - 1.0) <= 1e-9,
            "DensityMatrix::from_pure: state not normalized");
    ComplexMatrix m = outer(amps, amps);
    // Rescale so the trace is exactly 1 despite rounding in |amps|^2.
    for (cplx& e : m.entries) e /= n2;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::mixture(const std::vector<double>& weights,
                                     const std::vector<DensityMatrix>& parts) {
    require(!weights.empty() && weights.size() == parts.size(),
            "DensityMatrix::mixture: weight/part count mismatch");
    double sum = 0.0;
    for (double w : weights) {
        require(w >= 0.0, "DensityMatrix::mixture: negative weight");
        sum += w;
    }
    require(std::abs(sum - 1.0) <= 1e-9,
            "DensityMatrix::mixture: weights do not sum to 1");
    const std::size_t d = parts.front().dim;
    ComplexMatrix m(d, d);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        require(parts[k].dim == d, "DensityMatrix::mixture: dimension mismatch");
        active_kernels().axpy(cplx(weights[k] / sum, 0.0),
                              parts[k].mat.entries.data(), m.entries.data(),
                              m.entries.size());
    }
    return DensityMatrix(std::move(m));
}

void DensityMatrix::validate_psd(double floor) const {
    const EighResult e = eigh(mat);
    for (double v : e.values)
        require(v >= floor, "DensityMatrix: eigenvalue below PSD floor");
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols == b.rows, "matmul: inner dimension mismatch");
    ComplexMatrix c(a.rows, b.cols);
    active_kernels().matmul(a.entries.data(), b.entries.data(),
                            c.entries.data(), a.rows, a.cols, b.cols);
    return c;
}

std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& x) {
    require(a.cols == x.size(), "matvec: dimension mismatch");
    std::vector<cplx> y(a.rows);
    active_kernels().matvec(a.entries.data(), x.data(), y.data(), a.rows,
                            a.cols);
    return y;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix d(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            d.at(j, i) = std::conj(a.at(i, j));
    return d;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "add: shape mismatch");
    ComplexMatrix c = a;
    active_kernels().axpy(cplx(1.0, 0.0), b.entries.data(), c.entries.data(),
                          c.entries.size());
    return c;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx factor) {
    ComplexMatrix c(a.rows, a.cols);
    active_kernels().axpy(factor, a.entries.data(), c.entries.data(),
                          c.entries.size());
    return c;
}

cplx trace(const ComplexMatrix& a) {
    require(a.rows == a.cols, "trace: non-square matrix");
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) t += a.at(i, i);
    return t;
}

cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    require(x.size() == y.size(), "inner: length mismatch");
    return active_kernels().dotc(x.data(), y.data(), x.size());
}

ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m.at(i, j) = u[i] * std::conj(v[j]);
    return m;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cplx& e : a.entries) m = std::max(m, std::abs(e));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols,
            "max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows != a.cols) return false;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = i; j < a.cols; ++j)
            if (std::abs(a.at(i, j) - std::conj(a.at(j, i))) > tol)
                return false;
    return true;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    if (a.rows != a.cols) return false;
    const ComplexMatrix p = matmul(dagger(a), a);
    return max_abs_diff(p, ComplexMatrix::identity(a.rows)) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim) {
    require(a.rows > 0 && b.rows > 0 && a.cols > 0 && b.cols > 0,
            "kron: empty operand");
    require(a.rows <= max_dim / b.rows && a.cols <= max_dim / b.cols,
            "kron: result dimension exceeds configured maximum");
    ComplexMatrix c(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const cplx aij = a.at(i, j);
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    c.at(i * b.rows + k, j * b.cols + l) = aij * b.at(k, l);
        }
    return c;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& h, cplx scale_factor) {
    require(h.rows == h.cols, "matrix_exponential: non-square input");
    require(is_hermitian(h), "matrix_exponential: input not Hermitian");
    const std::size_t n = h.rows;

    ComplexMatrix a = scale(h, scale_factor);
    // Infinity norm bounds the spectral radius; halve until the Taylor
    // series converges fast.
    double inorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a.at(i, j));
        inorm = std::max(inorm, row);
    }
    int squarings = 0;
    while (inorm > 0.5) {
        inorm *= 0.5;
        ++squarings;
    }
    const double factor = std::ldexp(1.0, -squarings);
    for (cplx& e : a.entries) e *= factor;

    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 64; ++k) {
        term = matmul(term, a);
        for (cplx& e : term.entries) e /= static_cast<double>(k);
        active_kernels().axpy(cplx(1.0, 0.0), term.entries.data(),
                              sum.entries.data(), sum.entries.size());
        if (max_abs(term) < 1e-20) break;
    }
    for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum);
    return sum;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& factor_dims,
                            std::size_t keep) {
    require(!factor_dims.empty(), "partial_trace: empty factor list");
    require(keep < factor_dims.size(), "partial_trace: keep index out of range");
    std::size_t prod = 1;
    for (std::size_t d : factor_dims) prod *= d;
    require(prod == rho.dim, "partial_trace: factor dimensions do not match");

    // Decompose each full index into (kept index, rest index).
    const std::size_t total = rho.dim;
    std::vector<std::size_t> kept(total), rest(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t t = idx, k = 0, r = 0;
        for (std::size_t f = factor_dims.size(); f-- > 0;) {
            const std::size_t digit = t % factor_dims[f];
            t /= factor_dims[f];
            if (f == keep)
                k = digit;
            else
                r = r * factor_dims[f] + digit;  // any consistent packing
        }
        kept[idx] = k;
        rest[idx] = r;
    }

    const std::size_t dk = factor_dims[keep];
    ComplexMatrix out(dk, dk);
    for (std::size_t r = 0; r < total; ++r)
        for (std::size_t c = 0; c < total; ++c)
            if (rest[r] == rest[c])
                out.at(kept[r], kept[c]) += rho.mat.at(r, c);
    return DensityMatrix(std::move(out));
}

EighResult eigh(const ComplexMatrix& a) {
    require(a.rows == a.cols, "eigh: non-square input");
    require(is_hermitian(a), "eigh: input not Hermitian");
    const std::size_t n = a.rows;

    ComplexMatrix m = a;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale0 = std::max(max_abs(a), 1e-300);
    const double stop = 1e-15 * scale0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off = std::max(off, std::abs(m.at(p, q)));
        if (off <= stop) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m.at(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop * 1e-2) continue;

                const double app = m.at(p, p).real();
                const double aqq = m.at(q, q).real();
                const cplx phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = phase * (t * c);

                // Right-multiply rows/cols p,q by the plane rotation
                // J = [[c, s], [-conj(s), c]]; m <- J^dagger m J.
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx mjp = m.at(j, p);
                    const cplx mjq = m.at(j, q);
                    m.at(j, p) = mjp * c - mjq * std::conj(s);
                    m.at(j, q) = mjp * s + mjq * c;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx mpj = m.at(p, j);
                    const cplx mqj = m.at(q, j);
                    m.at(p, j) = mpj * c - mqj * s;
                    m.at(q, j) = std::conj(s) * mpj + mqj * c;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx vjp = v.at(j, p);
                    const cplx vjq = v.at(j, q);
                    v.at(j, p) = vjp * c - vjq * std::conj(s);
                    v.at(j, q) = vjp * s + vjq * c;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return m.at(i, i).real() < m.at(j, j).real();
    });

    EighResult res;
    res.values.resize(n);
    res.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        res.values[k] = m.at(order[k], order[k]).real();
        for (std::size_t j = 0; j < n; ++j)
            res.vectors.at(j, k) = v.at(j, order[k]);
    }
    return res;
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& a, double floor) {
    const EighResult e = eigh(a);
    const double scale0 = std::max(std::abs(e.values.back()), 1.0);
    const std::size_t n = a.rows;
    ComplexMatrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        require(e.values[k] >= floor * scale0,
                "sqrtm_psd: matrix is not positive semidefinite");
        d.at(k, k) = cplx(std::sqrt(std::max(e.values[k], 0.0)), 0.0);
    }
    return matmul(matmul(e.vectors, d), dagger(e.vectors));
}

}  // namespace tetraq
