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

#include "tetraq/gate_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tetraq {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void require_stage(const ProtocolState& st, Stage expected,
                   const char* op_name) {
    if (st.stage != expected)
        throw std::logic_error(std::string(op_name) +
                               ": protocol stage out of order");
}

// Apply a 4x4 ancilla operator: the register viewed as a 4x4 matrix
// (ancilla row, qubits column) is left-multiplied by op.
ProtocolState apply_ancilla_op(const ProtocolState& in,
                               const ComplexMatrix& op) {
    ProtocolState out = in;
    active_kernels().matmul(op.entries.data(), in.state.amps.data(),
                            out.state.amps.data(), 4, 4, 4);
    return out;
}

// Tetrahedron directions in ancilla-level order G, G', E, E'.
constexpr double kTetra[4][3] = {
    {1.0, 1.0, 1.0}, {1.0, -1.0, -1.0}, {-1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0}};

DensityMatrix reduced_target(const std::vector<cplx>& chi) {
    return partial_trace(DensityMatrix::from_pure(chi), {2, 2}, 0);
}

}  // namespace

double prep_theta1() { return -2.0 * std::asin(1.0 / std::sqrt(6.0)); }
double prep_theta2() { return -2.0 * std::asin(std::sqrt(2.0 / 5.0)); }
double prep_theta3() { return kPi / 2.0; }

ComplexMatrix subspace_pauli(char axis, std::size_t j, std::size_t k,
                             std::size_t dim) {
    require(j != k, "subspace_pauli: levels must differ");
    require(j < dim && k < dim, "subspace_pauli: level index out of range");
    ComplexMatrix m(dim, dim);
    switch (axis) {
        case 'x':
            m.at(k, j) = cplx(1.0, 0.0);
            m.at(j, k) = cplx(1.0, 0.0);
            break;
        case 'y':
            m.at(k, j) = cplx(0.0, -1.0);
            m.at(j, k) = cplx(0.0, 1.0);
            break;
        case 'z':
            m.at(k, k) = cplx(1.0, 0.0);
            m.at(j, j) = cplx(-1.0, 0.0);
            break;
        default:
            require(false, "subspace_pauli: axis must be x, y or z");
    }
    return m;
}

ComplexMatrix subspace_rotation(char axis, std::size_t j, std::size_t k,
                                double theta, std::size_t dim) {
    require(j != k, "subspace_rotation: levels must differ");
    require(j < dim && k < dim, "subspace_rotation: level index out of range");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    ComplexMatrix m = ComplexMatrix::identity(dim);
    switch (axis) {
        case 'x':
            m.at(j, j) = cplx(c, 0.0);
            m.at(k, k) = cplx(c, 0.0);
            m.at(j, k) = cplx(0.0, -s);
            m.at(k, j) = cplx(0.0, -s);
            break;
        case 'y':
            // R_y(theta)|j> = c|j> - s|k>, R_y(theta)|k> = s|j> + c|k>
            m.at(j, j) = cplx(c, 0.0);
            m.at(k, k) = cplx(c, 0.0);
            m.at(j, k) = cplx(s, 0.0);
            m.at(k, j) = cplx(-s, 0.0);
            break;
        case 'z':
            m.at(j, j) = cplx(c, s);
            m.at(k, k) = cplx(c, -s);
            break;
        default:
            require(false, "subspace_rotation: axis must be x, y or z");
    }
    return m;
}

ProtocolState initial_state(const std::vector<cplx>& chi) {
    require(chi.size() == 4, "initial_state: chi needs 4 amplitudes");
    const double n2 = active_kernels().sum_abs2(chi.data(), chi.size());
    require(std::abs(n2 - 1.0) <= 1e-9, "initial_state: chi not normalized");
    const double inv = 1.0 / std::sqrt(n2);

    std::vector<cplx> amps(16, cplx(0.0, 0.0));
    for (std::size_t q = 0; q < 4; ++q) amps[q] = chi[q] * inv;
    ProtocolState st;
    st.state = StateVector({4, 2, 2}, std::move(amps));
    st.stage = Stage::Initial;
    return st;
}

ProtocolState prepare_ancilla(const ProtocolState& in) {
    require_stage(in, Stage::Initial, "prepare_ancilla");
    double off = 0.0;
    for (std::size_t i = 4; i < 16; ++i) off += std::norm(in.state.amps[i]);
    require(off <= kTol.normalization,
            "prepare_ancilla: ancilla must start in |G>");

    const ComplexMatrix r1 = subspace_rotation('y', 0, 2, prep_theta1(), 4);
    const ComplexMatrix r2 = subspace_rotation('y', 0, 1, prep_theta2(), 4);
    const ComplexMatrix r3 = subspace_rotation('y', 1, 3, prep_theta3(), 4);
    ProtocolState out = apply_ancilla_op(in, matmul(r3, matmul(r2, r1)));
    out.stage = Stage::Prepared;
    return out;
}

ProtocolState controlled_unitary(const ProtocolState& in, AncillaLevel control,
                                 const ComplexMatrix& u) {
    require(u.rows == 2 && u.cols == 2, "controlled_unitary: u must be 2x2");
    require(is_unitary(u), "controlled_unitary: u is not unitary");
    ProtocolState out = in;
    const std::size_t a = static_cast<std::size_t>(control);
    for (std::size_t s = 0; s < 2; ++s) {
        const cplx v0 = in.state.amps[a * 4 + 0 * 2 + s];
        const cplx v1 = in.state.amps[a * 4 + 1 * 2 + s];
        out.state.amps[a * 4 + 0 * 2 + s] = u.at(0, 0) * v0 + u.at(0, 1) * v1;
        out.state.amps[a * 4 + 1 * 2 + s] = u.at(1, 0) * v0 + u.at(1, 1) * v1;
    }
    return out;
}

ProtocolState run_controlled_stage(const ProtocolState& in) {
    require_stage(in, Stage::Prepared, "run_controlled_stage");
    ProtocolState st =
        controlled_unitary(in, AncillaLevel::Gp, subspace_pauli('y', 0, 1, 2));
    st = controlled_unitary(st, AncillaLevel::E, subspace_pauli('x', 0, 1, 2));
    st = controlled_unitary(st, AncillaLevel::Ep,
                            scale(subspace_pauli('z', 0, 1, 2), cplx(-1.0, 0.0)));
    st.stage = Stage::Controlled;
    return st;
}

ProtocolState run_final_rotations(const ProtocolState& in) {
    require_stage(in, Stage::Controlled, "run_final_rotations");
    const double half_pi = kPi / 2.0;
    // Listed order: (G,E), (G',E'), (G,G'), (E,E'). Left-composition
    // reverses the list.
    ComplexMatrix u = subspace_rotation('y', 0, 2, half_pi, 4);
    u = matmul(subspace_rotation('y', 1, 3, half_pi, 4), u);
    u = matmul(subspace_rotation('y', 0, 1, half_pi, 4), u);
    u = matmul(subspace_rotation('y', 2, 3, half_pi, 4), u);
    ProtocolState out = apply_ancilla_op(in, u);
    out.stage = Stage::Final;
    return out;
}

ProtocolState run_protocol(const std::vector<cplx>& chi) {
    return run_final_rotations(
        run_controlled_stage(prepare_ancilla(initial_state(chi))));
}

PovmSet povm_elements() {
    const double norm = 1.0 / (2.0 * std::sqrt(2.0));
    const ComplexMatrix sig[3] = {subspace_pauli('x', 0, 1, 2),
                                  subspace_pauli('y', 0, 1, 2),
                                  subspace_pauli('z', 0, 1, 2)};
    PovmSet set;
    for (std::size_t a = 0; a < 4; ++a) {
        ComplexMatrix q = ComplexMatrix::identity(2);
        for (int ax = 0; ax < 3; ++ax)
            q = add(q, scale(sig[ax], cplx(kTetra[a][ax] * kInvSqrt3, 0.0)));
        q = scale(q, cplx(norm, 0.0));
        set.effect[a] = matmul(q, q);
        set.q[a] = std::move(q);
    }
    return set;
}

ProbVector ancilla_probabilities(const ProtocolState& in) {
    require_stage(in, Stage::Final, "ancilla_probabilities");
    double p[4];
    for (std::size_t a = 0; a < 4; ++a)
        p[a] = active_kernels().sum_abs2(in.state.amps.data() + a * 4, 4);
    return ProbVector{p[0], p[1], p[2], p[3]};
}

ProbVector probabilities_from_bloch(const BlochVector& s) {
    // Expression shapes are chosen so that negating sy and sz swaps
    // p_g <-> p_gp and p_e <-> p_ep bit-exactly.
    ProbVector p;
    p.p_g = (1.0 + ((s.sx + s.sy) + s.sz) * kInvSqrt3) * 0.25;
    p.p_gp = (1.0 + ((s.sx - s.sy) - s.sz) * kInvSqrt3) * 0.25;
    p.p_e = (1.0 + ((s.sy - s.sx) - s.sz) * kInvSqrt3) * 0.25;
    p.p_ep = (1.0 + ((-s.sy - s.sx) + s.sz) * kInvSqrt3) * 0.25;
    return p;
}

BlochVector bloch_from_probabilities(const ProbVector& p, double sum_tol) {
    require(std::abs(p.sum() - 1.0) <= sum_tol,
            "bloch_from_probabilities: probabilities do not sum to 1");
    const double s3 = std::sqrt(3.0);
    BlochVector s;
    s.sx = s3 * ((p.p_g + p.p_gp) - (p.p_e + p.p_ep));
    s.sy = s3 * ((p.p_g - p.p_gp) + (p.p_e - p.p_ep));
    s.sz = s3 * ((p.p_g - p.p_gp) - (p.p_e - p.p_ep));
    return s;
}

double concurrence_squared_from_probabilities(const ProbVector& p,
                                              bool* clamped) {
    const double sum_sq =
        ((p.p_g * p.p_g + p.p_gp * p.p_gp) + p.p_e * p.p_e) + p.p_ep * p.p_ep;
    const double raw = 4.0 * (1.0 - 3.0 * sum_sq);
    if (raw < kTol.c_squared_floor) {
        if (clamped) *clamped = (raw != 0.0);
        return 0.0;
    }
    if (clamped) *clamped = (raw > 4.0);
    return std::min(raw, 4.0);
}

double concurrence_from_probabilities(const ProbVector& p, bool* clamped) {
    return std::sqrt(concurrence_squared_from_probabilities(p, clamped));
}

double concurrence_oracle(const std::vector<cplx>& chi) {
    require(chi.size() == 4, "concurrence_oracle: chi needs 4 amplitudes");
    const DensityMatrix rho_t = reduced_target(chi);
    const double det = rho_t.mat.at(0, 0).real() * rho_t.mat.at(1, 1).real() -
                       std::norm(rho_t.mat.at(0, 1));
    return std::sqrt(std::max(0.0, 4.0 * det));
}

double concurrence_amplitude_oracle(const std::vector<cplx>& chi) {
    require(chi.size() == 4,
            "concurrence_amplitude_oracle: chi needs 4 amplitudes");
    return 2.0 * std::abs(chi[0] * chi[3] - chi[1] * chi[2]);
}

double wootters_concurrence(const DensityMatrix& rho) {
    require(rho.dim == 4, "wootters_concurrence: needs a two-qubit state");
    // The four sqrt-eigenvalues of rho*rho_tilde equal the singular values
    // of B = L^T (sy x sy) L with rho = L L^dagger. Going through L and a
    // Hermitian dilation keeps them accurate to machine epsilon absolutely;
    // the eigenvalue route squares them first and the square root then
    // turns O(eps) noise into O(sqrt(eps)) errors for the small ones.
    const EighResult spec = eigh(rho.mat);
    double lam_max = 0.0;
    for (double v : spec.values) lam_max = std::max(lam_max, v);
    const double floor = 100.0 * 2.220446049250313e-16 * lam_max;
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < 4; ++k)
        if (spec.values[k] > floor) kept.push_back(k);
    if (kept.empty()) return 0.0;
    const std::size_t r = kept.size();

    ComplexMatrix l(4, r);  // columns sqrt(lambda_k) v_k
    for (std::size_t j = 0; j < r; ++j) {
        const double s = std::sqrt(spec.values[kept[j]]);
        for (std::size_t i = 0; i < 4; ++i)
            l.at(i, j) = spec.vectors.at(i, kept[j]) * s;
    }
    const ComplexMatrix yy =
        kron(subspace_pauli('y', 0, 1, 2), subspace_pauli('y', 0, 1, 2));
    ComplexMatrix lt(r, 4);  // plain transpose, no conjugation
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < r; ++j) lt.at(j, i) = l.at(i, j);
    const ComplexMatrix b = matmul(lt, matmul(yy, l));

    // Singular values of b from the dilation [[0, b], [b^dagger, 0]],
    // whose spectrum is {+sigma_i, -sigma_i}.
    ComplexMatrix dil(2 * r, 2 * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            dil.at(i, r + j) = b.at(i, j);
            dil.at(r + i, j) = std::conj(b.at(j, i));
        }
    const EighResult sv = eigh(dil);
    double c = 0.0;  // 2 sigma_max - sum sigma; absent ranks contribute 0
    for (std::size_t k = 0; k < r; ++k) {
        const double sigma = std::max(sv.values[r + k], 0.0);  // ascending
        c += (k + 1 == r) ? sigma : -sigma;
    }
    return std::max(0.0, c);
}

BlochVector bloch_of_qubit(const DensityMatrix& rho) {
    require(rho.dim == 2, "bloch_of_qubit: needs a single-qubit state");
    BlochVector s;
    s.sx = trace(matmul(rho.mat, subspace_pauli('x', 0, 1, 2))).real();
    s.sy = trace(matmul(rho.mat, subspace_pauli('y', 0, 1, 2))).real();
    s.sz = trace(matmul(rho.mat, subspace_pauli('z', 0, 1, 2))).real();
    return s;
}

double mixed_state_bias_predicted(const DensityMatrix& rho_prime,
                                  const std::vector<cplx>& chi,
                                  double lambda) {
    require(lambda >= 0.0 && lambda <= 1.0,
            "mixed_state_bias_predicted: lambda outside [0, 1]");
    require(rho_prime.dim == 4,
            "mixed_state_bias_predicted: rho_prime must be two-qubit");
    const BlochVector p = bloch_of_qubit(reduced_target(chi));
    const BlochVector pp =
        bloch_of_qubit(partial_trace(rho_prime, {2, 2}, 0));
    const double dot = p.sx * pp.sx + p.sy * pp.sy + p.sz * pp.sz;
    return -2.0 * lambda * (1.0 - dot);
}

double mixed_state_bias_actual(const DensityMatrix& rho_prime,
                               const std::vector<cplx>& chi, double lambda) {
    require(lambda >= 0.0 && lambda <= 1.0,
            "mixed_state_bias_actual: lambda outside [0, 1]");
    const DensityMatrix mix = DensityMatrix::mixture(
        {1.0 - lambda, lambda}, {DensityMatrix::from_pure(chi), rho_prime});
    const DensityMatrix rho_t = partial_trace(mix, {2, 2}, 0);
    const double det = rho_t.mat.at(0, 0).real() * rho_t.mat.at(1, 1).real() -
                       std::norm(rho_t.mat.at(0, 1));
    const double reported = 4.0 * det;
    const double truth = wootters_concurrence(mix);
    return truth * truth - reported;
}

}  // namespace tetraq
