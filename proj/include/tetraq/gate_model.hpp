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

// Ideal gate-level protocol: a four-level ancilla is prepared, entangled
// with the target qubit through three controlled operations, and rotated so
// that its four occupation probabilities realize a tetrahedral POVM on the
// target. The squared concurrence of the two-qubit input then reads off as
// C^2 = 4(1 - 3 * sum_A P_A^2).

#ifndef TETRAQ_GATE_MODEL_HPP
#define TETRAQ_GATE_MODEL_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "tetraq/linalg.hpp"

namespace tetraq {

// Fixed project-wide ordering; every 4x4 ancilla matrix is indexed by it.
enum class AncillaLevel : int { G = 0, Gp = 1, E = 2, Ep = 3 };

enum class Stage : int { Initial = 0, Prepared = 1, Controlled = 2, Final = 3 };

// Protocol register: ancilla (4) x target qubit (2) x spectator qubit (2).
// The protocol never touches the spectator factor; probabilities depend on
// the input only through the target qubit's reduced state.
struct ProtocolState {
    StateVector state;
    Stage stage = Stage::Initial;
};

struct ProbVector {
    double p_g = 0.0, p_gp = 0.0, p_e = 0.0, p_ep = 0.0;
    double sum() const { return ((p_g + p_gp) + p_e) + p_ep; }
};

// Expectation values of the subspace Pauli convention used throughout:
// sigma_z = |upper><upper| - |lower><lower|, so sz = -1 for the lower level.
struct BlochVector {
    double sx = 0.0, sy = 0.0, sz = 0.0;
    double norm2() const { return sx * sx + sy * sy + sz * sz; }
};

// Preparation rotation angles. Under R_y(theta)|J> = cos(theta/2)|J> -
// sin(theta/2)|K> these three pulses turn |G> into the tetrahedral ancilla
// state (1/sqrt2)(|G> + (|G'> + |E> - |E'>)/sqrt3).
double prep_theta1();  // -2 asin(1/sqrt6),   on (G, E)
double prep_theta2();  // -2 asin(sqrt(2/5)), on (G, G')
double prep_theta3();  // +pi/2,              on (G', E')

// Pauli operator acting on span{|j>, |k>} of a dim-level system, zero
// elsewhere. Conventions: sigma_x = |k><j| + |j><k|, sigma_y =
// -i(|k><j| - |j><k|), sigma_z = |k><k| - |j><j|. Throws if j == k or an
// index is out of range.
ComplexMatrix subspace_pauli(char axis, std::size_t j, std::size_t k,
                             std::size_t dim);

// exp(-i theta/2 sigma_axis^{jk}); identity outside the block.
ComplexMatrix subspace_rotation(char axis, std::size_t j, std::size_t k,
                                double theta, std::size_t dim);

// |G> (x) |chi>, chi given as 4 amplitudes over (target, spectator) in
// basis order gg, ge, eg, ee (first letter = target). chi must be
// normalized within 1e-9; it is renormalized exactly before embedding.
ProtocolState initial_state(const std::vector<cplx>& chi);

// Three preparation rotations. Requires stage Initial with the ancilla in
// |G>; produces stage Prepared.
ProtocolState prepare_ancilla(const ProtocolState& in);

// Apply u on the target qubit exactly on the component where the ancilla
// occupies `control`. u must be unitary 2x2. Stage is left unchanged.
ProtocolState controlled_unitary(const ProtocolState& in, AncillaLevel control,
                                 const ComplexMatrix& u);

// C^{G'}(sigma_y), C^{E}(sigma_x), C^{E'}(-sigma_z). Prepared -> Controlled.
ProtocolState run_controlled_stage(const ProtocolState& in);

// Final pi/2 rotations around y on (G,E), (G',E'), (G,G'), (E,E') in that
// order. Controlled -> Final. The result decomposes as
// (|G>Q_G - |G'>Q_G' - |E>Q_E + |E'>Q_E')|chi>.
ProtocolState run_final_rotations(const ProtocolState& in);

// Convenience: initial_state -> prepare -> controlled -> final.
ProtocolState run_protocol(const std::vector<cplx>& chi);

// Tetrahedral POVM on the target qubit: q[A] = (1/(2 sqrt2))(I +
// n_A . sigma / sqrt3) with n_G=(1,1,1), n_G'=(1,-1,-1), n_E=(-1,1,-1),
// n_E'=(-1,-1,1); effect[A] = q[A]^2 sum to the identity.
struct PovmSet {
    std::array<ComplexMatrix, 4> q;
    std::array<ComplexMatrix, 4> effect;
};
PovmSet povm_elements();

// Marginal occupation probabilities of the four ancilla levels. Requires
// stage Final.
ProbVector ancilla_probabilities(const ProtocolState& in);

// Forward map P_A = (1 + n_A . s / sqrt3) / 4.
ProbVector probabilities_from_bloch(const BlochVector& s);

// Linear inversion of the forward map. Throws if the probabilities do not
// sum to 1 within sum_tol (exact-mode contract; renormalize sampled data
// before calling).
BlochVector bloch_from_probabilities(const ProbVector& p,
                                     double sum_tol = kTol.prob_sum_loose);

// C^2 = 4(1 - 3 sum_A P_A^2), clamped to [0, 4]; *clamped is set when the
// raw value fell outside (possible only for noisy or debiased inputs).
double concurrence_squared_from_probabilities(const ProbVector& p,
                                              bool* clamped = nullptr);
// sqrt of the above, clamping negative radicands to 0.
double concurrence_from_probabilities(const ProbVector& p,
                                      bool* clamped = nullptr);

// Independent oracle: C = sqrt(4 det rho_target) for a normalized two-qubit
// pure state. Throws if the norm deviates beyond 1e-9.
double concurrence_oracle(const std::vector<cplx>& chi);
// Closed-form cross-check on amplitudes (a,b,c,d): C = 2|ad - bc|.
double concurrence_amplitude_oracle(const std::vector<cplx>& chi);

// Concurrence of an arbitrary two-qubit density matrix. The usual
// sqrt-eigenvalues of rho * rho~ (rho~ = (sy (x) sy) conj(rho) (sy (x) sy))
// are obtained as singular values of L^T (sy (x) sy) L with rho = L L^dag,
// which keeps them accurate near rank deficiency.
double wootters_concurrence(const DensityMatrix& rho);

// Bloch vector of a single-qubit density matrix under the subspace Pauli
// convention above.
BlochVector bloch_of_qubit(const DensityMatrix& rho);

// Leading-order error of the protocol's reported C^2 when the input is the
// mixture rho = (1-lambda)|chi><chi| + lambda rho_prime instead of a pure
// state: predicted true minus reported = -2 lambda (1 - P . P') with P, P'
// the target-qubit Bloch vectors of |chi> and rho_prime. Throws for lambda
// outside [0, 1]. The O(lambda^2) residual guarantee holds when rho_prime
// is a pure product state.
double mixed_state_bias_predicted(const DensityMatrix& rho_prime,
                                  const std::vector<cplx>& chi, double lambda);

// Companion: the actual difference (true C^2 of the mixture, via the
// Wootters concurrence) minus (C^2 the protocol reports on the mixture,
// i.e. 4 det of its reduced target state). Same sign orientation as the
// prediction above.
double mixed_state_bias_actual(const DensityMatrix& rho_prime,
                               const std::vector<cplx>& chi, double lambda);

}  // namespace tetraq

#endif  // TETRAQ_GATE_MODEL_HPP
