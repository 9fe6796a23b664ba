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

// Pulse-level trapped-ion simulation. Two ions share one phonon bus mode:
// an ancilla ion whose four protocol levels (plus four shelving levels used
// at readout) realize the four-level ancilla, and a target ion carrying the
// measured qubit plus one auxiliary level for the hiding pulse. Pulses are
// carrier rotations (Eq.-of-motion two-level unitaries, phonon untouched)
// and red/blue sideband unitaries (Jaynes-Cummings sector rotations that
// exchange one phonon). The spectator qubit of the two-qubit input is never
// addressed; it rides along as an extra trailing tensor factor.

#ifndef TETRAQ_ION_PULSE_HPP
#define TETRAQ_ION_PULSE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tetraq/gate_model.hpp"
#include "tetraq/linalg.hpp"
#include "tetraq/rng.hpp"

namespace tetraq {

// Ancilla ion levels. G, Gp are the 4S ground sublevels (bright at
// readout); E, Ep the 3D3/2 protocol levels; D5a/D5b/D5c the 3D5/2 shelves
// the readout maps E, Ep, Gp onto; D3aux parks G during the mapping.
enum class AncillaIonLevel : int {
    G = 0, Gp = 1, E = 2, Ep = 3, D5a = 4, D5b = 5, D5c = 6, D3aux = 7
};

// Target ion levels: the qubit pair plus the auxiliary level the hiding
// 2 pi pulse cycles through.
enum class TargetIonLevel : int { g_q = 0, e_q = 1, ep_q = 2 };

enum class IonName : int { ancilla = 0, target = 1 };

enum class PulseKind : int {
    carrier = 0, red_sideband = 1, blue_sideband = 2, raman_carrier = 3
};

// Hilbert space layout: ancilla (8) x target (3) x phonon (fock_cutoff+1),
// index = (a * 3 + t) * phonon_dim + n. fock_cutoff is the highest Fock
// index retained; the protocol populates at most n = 1, so cutoff >= 2
// leaves at least one guard level.
struct IonLevelScheme {
    int fock_cutoff = 3;

    static constexpr std::size_t kAncillaDim = 8;
    static constexpr std::size_t kTargetDim = 3;

    std::size_t phonon_dim() const;  // fock_cutoff + 1; validates cutoff >= 2
    std::size_t total_dim() const { return kAncillaDim * kTargetDim * phonon_dim(); }
    std::size_t index(int a, int t, int n) const {
        return (static_cast<std::size_t>(a) * kTargetDim + t) * phonon_dim() + n;
    }
};

// One laser pulse. theta is the effective pulse area (|Omega| tau for
// carriers, eta |Omega| tau for sidebands, both calibrated on the n=0<->1
// transition); phi the optical phase. Sidebands keep phi = 0.
struct Pulse {
    IonName ion = IonName::ancilla;
    PulseKind kind = PulseKind::carrier;
    int lower = 0;
    int upper = 0;
    double theta = 0.0;
    double phi = 0.0;
};

struct PulseProgram {
    std::vector<Pulse> pulses;
    std::string label;
};

// Physical knobs reduce to the effective pulse area: |Omega| tau on the
// carrier, eta |Omega| tau on a sideband (Lamb-Dicke factor eta). Only the
// area is observable in the Lamb-Dicke-limit unitaries.
inline double carrier_area(double omega_abs, double tau) {
    return omega_abs * tau;
}
inline double sideband_area(double eta, double omega_abs, double tau) {
    return eta * omega_abs * tau;
}

// Carrier rotation on the (lower, upper) pair of an ion_dim-level ion,
// identity on the phonon factor. Matrix over ion (x) phonon, index
// lvl * phonon_dim + n. Block form in (lower, upper):
//   [[cos(t/2), -i sin(t/2) e^{-i phi}], [-i sin(t/2) e^{i phi}, cos(t/2)]]
ComplexMatrix carrier_unitary(double theta, double phi, int lower, int upper,
                              std::size_t ion_dim, std::size_t phonon_dim);

// Red/blue sideband on the (lower, upper) pair. Red couples |l, n+1> <->
// |u, n>, blue |l, n> <-> |u, n+1>, each sector rotating by
// theta * sqrt(n+1) / 2 as [[c, -s], [s, c]] in (lower-state, upper-state)
// order. States whose partner lies above the cutoff are left untouched;
// execute() tracks their population as truncation leakage.
ComplexMatrix sideband_unitary(PulseKind kind, double theta, int lower,
                               int upper, std::size_t ion_dim,
                               std::size_t phonon_dim);

// Full-space unitary for one pulse (identity on the unaddressed ion).
// Validates level indices against the addressed ion and phi = 0 for
// sidebands.
ComplexMatrix pulse_unitary(const Pulse& p, const IonLevelScheme& scheme);

struct ExecutionDiagnostics {
    // Max population found on a truncation-guard state as a sideband hit it.
    double truncation_leakage = 0.0;
    // Max |1 - norm^2| observed after any pulse.
    double norm_drift = 0.0;

    bool valid(double tol = kTol.leakage) const {
        return truncation_leakage < tol && norm_drift < tol;
    }
};

// Apply the program left to right. The state's factor_dims must start with
// [8, 3, phonon_dim]; trailing factors (the spectator qubit) are carried
// along untouched. Norm is required to be 1 within 1e-9 on entry.
StateVector execute(const PulseProgram& program, const StateVector& initial,
                    const IonLevelScheme& scheme,
                    ExecutionDiagnostics* diag = nullptr);

// The 20-pulse program realizing the full gate-level protocol:
// 3 preparation pulses; controlled-sigma_y block (blue pi, R_x(-pi/2) on
// the target, hiding 2 pi red, R_x(pi/2), blue pi); controlled-sigma_x
// block (red pi, R_y(pi/2), hiding 2 pi red, R_y(-pi/2), red pi);
// controlled-(-sigma_z) block (red pi, hiding 2 pi red, red pi); four
// final carrier pi/2 rotations.
PulseProgram compile_protocol(const IonLevelScheme& scheme);

// |G> (x) |chi on (target, spectator)> (x) |n=0>, laid out as
// [8, 3, phonon, 2]. chi must be normalized within 1e-9.
StateVector initial_pulse_state(const std::vector<cplx>& chi,
                                const IonLevelScheme& scheme);

// |<gate final (x) n=0 | pulse final>| between a gate-model Final state and
// a pulse-level state with spectator factor.
double gate_pulse_fidelity(const ProtocolState& gate_final,
                           const StateVector& pulse_final,
                           const IonLevelScheme& scheme);

// Population outside phonon |0>.
double phonon_excess(const StateVector& state, const IonLevelScheme& scheme);

// Occupation of the four protocol levels (any phonon number).
ProbVector pulse_probabilities(const StateVector& state,
                               const IonLevelScheme& scheme);

// Readout: five mapping pulses shelve E -> D5a, Ep -> D5b, park G in D3aux
// and back (harmless overall phase), and move Gp -> D5c; the conditional
// fluorescence cascade then tests the bright 4S manifold, unshelving one
// branch per step. Outcome order is fixed: G, Gp, E, Ep.
struct CascadeStep {
    std::optional<Pulse> unshelve;  // applied before this step's test
    AncillaLevel outcome;           // declared if the test is bright
    bool has_test = true;           // final step declares by elimination
};

struct ReadoutPlan {
    PulseProgram mapping;
    std::array<CascadeStep, 4> steps;
};

ReadoutPlan compile_readout(const IonLevelScheme& scheme);

struct FluorescenceOutcome {
    AncillaLevel level_detected = AncillaLevel::G;
    int num_tests = 1;  // position in the cascade order, 1..4
};

// Born probabilities of the four cascade outcomes for a state that has
// already passed the mapping pulses.
ProbVector cascade_probabilities(const StateVector& mapped,
                                 const IonLevelScheme& scheme,
                                 const ReadoutPlan& plan);

// Sample one outcome by sequential projective bright/dark tests with the
// collapse applied between steps. Statistically equivalent to a direct
// 4-outcome draw from cascade_probabilities.
FluorescenceOutcome measure_cascade(const StateVector& mapped,
                                    const IonLevelScheme& scheme,
                                    const ReadoutPlan& plan, Rng& rng);
FluorescenceOutcome measure_cascade(const StateVector& mapped,
                                    const IonLevelScheme& scheme,
                                    const ReadoutPlan& plan,
                                    std::uint64_t seed);

// Repeated cascade measurement; counts in outcome order G, Gp, E, Ep.
// Per-shot conditional probabilities are precomputed once, which leaves
// the draw sequence identical to shot-by-shot measure_cascade walks.
std::array<std::uint64_t, 4> cascade_sample_counts(
    const StateVector& mapped, const IonLevelScheme& scheme,
    const ReadoutPlan& plan, std::uint64_t shots, std::uint64_t seed);

// Line format: `ion kind lower upper theta phi`, one pulse per line,
// angles printed with 12 significant digits. Level tokens are the enum
// names (G, Gp, E, Ep, D5a, D5b, D5c, D3aux; g_q, e_q, ep_q).
std::string serialize_program(const PulseProgram& program);
PulseProgram parse_program(const std::string& text);

}  // namespace tetraq

#endif  // TETRAQ_ION_PULSE_HPP
