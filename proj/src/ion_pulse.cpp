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

#include "tetraq/ion_pulse.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace tetraq {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::size_t ion_dim_of(IonName ion) {
    return ion == IonName::ancilla ? IonLevelScheme::kAncillaDim
                                   : IonLevelScheme::kTargetDim;
}

void validate_pulse(const Pulse& p) {
    const int dim = static_cast<int>(ion_dim_of(p.ion));
    require(p.lower != p.upper, "pulse: lower and upper must differ");
    require(p.lower >= 0 && p.lower < dim && p.upper >= 0 && p.upper < dim,
            "pulse: level index out of range for the addressed ion");
    if (p.kind == PulseKind::red_sideband || p.kind == PulseKind::blue_sideband)
        require(p.phi == 0.0, "pulse: sideband pulses keep phi = 0");
    require(std::isfinite(p.theta) && std::isfinite(p.phi),
            "pulse: non-finite angle");
}

Pulse make_pulse(IonName ion, PulseKind kind, int lower, int upper,
                 double theta, double phi) {
    Pulse p{ion, kind, lower, upper, theta, phi};
    validate_pulse(p);
    return p;
}

// Embed an (ion x phonon) operator into ancilla x target x phonon.
ComplexMatrix embed_for_ion(const ComplexMatrix& op, IonName ion,
                            const IonLevelScheme& scheme) {
    const std::size_t np = scheme.phonon_dim();
    const std::size_t d = scheme.total_dim();
    ComplexMatrix full(d, d);
    if (ion == IonName::ancilla) {
        for (std::size_t a = 0; a < 8; ++a)
            for (std::size_t ap = 0; ap < 8; ++ap)
                for (std::size_t n = 0; n < np; ++n)
                    for (std::size_t npr = 0; npr < np; ++npr) {
                        const cplx v = op.at(a * np + n, ap * np + npr);
                        if (v == cplx(0.0, 0.0)) continue;
                        for (std::size_t t = 0; t < 3; ++t)
                            full.at(scheme.index(a, t, n),
                                    scheme.index(ap, t, npr)) = v;
                    }
    } else {
        for (std::size_t t = 0; t < 3; ++t)
            for (std::size_t tp = 0; tp < 3; ++tp)
                for (std::size_t n = 0; n < np; ++n)
                    for (std::size_t npr = 0; npr < np; ++npr) {
                        const cplx v = op.at(t * np + n, tp * np + npr);
                        if (v == cplx(0.0, 0.0)) continue;
                        for (std::size_t a = 0; a < 8; ++a)
                            full.at(scheme.index(a, t, n),
                                    scheme.index(a, tp, npr)) = v;
                    }
    }
    return full;
}

const char* kIonNames[2] = {"ancilla", "target"};
const char* kKindNames[4] = {"carrier", "red_sideband", "blue_sideband",
                             "raman_carrier"};
const char* kAncillaNames[8] = {"G", "Gp", "E", "Ep", "D5a", "D5b", "D5c",
                                "D3aux"};
const char* kTargetNames[3] = {"g_q", "e_q", "ep_q"};

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::size_t IonLevelScheme::phonon_dim() const {
    require(fock_cutoff >= 2,
            "IonLevelScheme: fock_cutoff must be at least 2");
    return static_cast<std::size_t>(fock_cutoff) + 1;
}

ComplexMatrix carrier_unitary(double theta, double phi, int lower, int upper,
                              std::size_t ion_dim, std::size_t phonon_dim) {
    require(lower != upper, "carrier_unitary: levels must differ");
    require(lower >= 0 && upper >= 0 &&
                static_cast<std::size_t>(lower) < ion_dim &&
                static_cast<std::size_t>(upper) < ion_dim,
            "carrier_unitary: level index out of range");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx ephi(std::cos(phi), std::sin(phi));
    ComplexMatrix ion = ComplexMatrix::identity(ion_dim);
    const std::size_t l = lower, u = upper;
    ion.at(l, l) = cplx(c, 0.0);
    ion.at(u, u) = cplx(c, 0.0);
    ion.at(l, u) = cplx(0.0, -s) * std::conj(ephi);
    ion.at(u, l) = cplx(0.0, -s) * ephi;
    return kron(ion, ComplexMatrix::identity(phonon_dim));
}

ComplexMatrix sideband_unitary(PulseKind kind, double theta, int lower,
                               int upper, std::size_t ion_dim,
                               std::size_t phonon_dim) {
    require(kind == PulseKind::red_sideband || kind == PulseKind::blue_sideband,
            "sideband_unitary: kind must be a sideband");
    require(lower != upper, "sideband_unitary: levels must differ");
    require(lower >= 0 && upper >= 0 &&
                static_cast<std::size_t>(lower) < ion_dim &&
                static_cast<std::size_t>(upper) < ion_dim,
            "sideband_unitary: level index out of range");
    const std::size_t l = lower, u = upper, np = phonon_dim;
    ComplexMatrix m = ComplexMatrix::identity(ion_dim * np);
    // Sector n couples (lower-state, upper-state) = (|l,n+1>, |u,n>) for
    // red, (|l,n>, |u,n+1>) for blue, rotating by theta*sqrt(n+1)/2. The
    // would-be partners of the remaining edge states lie above the cutoff;
    // they stay untouched and execute() watches them for population.
    for (std::size_t n = 0; n + 1 < np; ++n) {
        const double half = theta * std::sqrt(static_cast<double>(n + 1)) / 2.0;
        const double c = std::cos(half);
        const double s = std::sin(half);
        const std::size_t lo = (kind == PulseKind::red_sideband)
                                   ? l * np + (n + 1)
                                   : l * np + n;
        const std::size_t up = (kind == PulseKind::red_sideband)
                                   ? u * np + n
                                   : u * np + (n + 1);
        m.at(lo, lo) = cplx(c, 0.0);
        m.at(up, up) = cplx(c, 0.0);
        m.at(lo, up) = cplx(-s, 0.0);
        m.at(up, lo) = cplx(s, 0.0);
    }
    return m;
}

ComplexMatrix pulse_unitary(const Pulse& p, const IonLevelScheme& scheme) {
    validate_pulse(p);
    const std::size_t ion_dim = ion_dim_of(p.ion);
    const std::size_t np = scheme.phonon_dim();
    ComplexMatrix op =
        (p.kind == PulseKind::carrier || p.kind == PulseKind::raman_carrier)
            ? carrier_unitary(p.theta, p.phi, p.lower, p.upper, ion_dim, np)
            : sideband_unitary(p.kind, p.theta, p.lower, p.upper, ion_dim, np);
    return embed_for_ion(op, p.ion, scheme);
}

StateVector execute(const PulseProgram& program, const StateVector& initial,
                    const IonLevelScheme& scheme, ExecutionDiagnostics* diag) {
    const std::size_t base = scheme.total_dim();
    require(initial.factor_dims.size() >= 3 && initial.factor_dims[0] == 8 &&
                initial.factor_dims[1] == 3 &&
                initial.factor_dims[2] == scheme.phonon_dim(),
            "execute: state factors must start with [8, 3, phonon]");
    const std::size_t extra = initial.dim() / base;
    require(extra * base == initial.dim(), "execute: amplitude count mismatch");
    require(std::abs(initial.norm2() - 1.0) <= 1e-9,
            "execute: initial state not normalized");

    ExecutionDiagnostics local;
    const std::size_t np = scheme.phonon_dim();
    StateVector cur = initial;
    std::vector<cplx> next(cur.amps.size());

    for (const Pulse& p : program.pulses) {
        validate_pulse(p);
        if (p.kind == PulseKind::red_sideband ||
            p.kind == PulseKind::blue_sideband) {
            // Guard states: the edge whose coupling partner lies above the
            // cutoff. Population here means the truncation is no longer
            // exact.
            const int edge_level =
                (p.kind == PulseKind::red_sideband) ? p.upper : p.lower;
            double guard = 0.0;
            for (std::size_t other = 0;
                 other < (p.ion == IonName::ancilla ? 3u : 8u); ++other) {
                const std::size_t idx =
                    (p.ion == IonName::ancilla)
                        ? scheme.index(edge_level, other, np - 1)
                        : scheme.index(other, edge_level, np - 1);
                guard += active_kernels().sum_abs2(
                    cur.amps.data() + idx * extra, extra);
            }
            local.truncation_leakage =
                std::max(local.truncation_leakage, guard);
        }
        const ComplexMatrix u = pulse_unitary(p, scheme);
        active_kernels().matmul(u.entries.data(), cur.amps.data(), next.data(),
                                base, base, extra);
        cur.amps.swap(next);
        local.norm_drift =
            std::max(local.norm_drift, std::abs(cur.norm2() - 1.0));
    }
    if (diag) *diag = local;
    return cur;
}

PulseProgram compile_protocol(const IonLevelScheme& scheme) {
    (void)scheme.phonon_dim();  // validates the cutoff
    const auto A = IonName::ancilla;
    const auto T = IonName::target;
    const auto CAR = PulseKind::carrier;
    const auto RED = PulseKind::red_sideband;
    const auto BLUE = PulseKind::blue_sideband;
    const auto RAM = PulseKind::raman_carrier;
    const int G = 0, Gp = 1, E = 2, Ep = 3;
    const int gq = 0, eq = 1, epq = 2;
    const double hp = kPi / 2.0;

    PulseProgram prog;
    prog.label = "protocol";
    auto add = [&prog](Pulse p) { prog.pulses.push_back(p); };

    // Ancilla preparation: R_y(theta1) on (G,E), R_y(theta2) on (G,Gp),
    // R_y(pi/2) on (Gp,Ep).
    add(make_pulse(A, CAR, G, E, prep_theta1(), -hp));
    add(make_pulse(A, RAM, G, Gp, prep_theta2(), -hp));
    add(make_pulse(A, CAR, Gp, Ep, prep_theta3(), -hp));
    // Controlled sigma_y on the Gp branch.
    add(make_pulse(A, BLUE, Gp, Ep, kPi, 0.0));
    add(make_pulse(T, CAR, gq, eq, -hp, 0.0));
    add(make_pulse(T, RED, gq, epq, 2.0 * kPi, 0.0));
    add(make_pulse(T, CAR, gq, eq, hp, 0.0));
    add(make_pulse(A, BLUE, Gp, Ep, kPi, 0.0));
    // Controlled sigma_x on the E branch.
    add(make_pulse(A, RED, G, E, kPi, 0.0));
    add(make_pulse(T, CAR, gq, eq, hp, -hp));
    add(make_pulse(T, RED, gq, epq, 2.0 * kPi, 0.0));
    add(make_pulse(T, CAR, gq, eq, -hp, -hp));
    add(make_pulse(A, RED, G, E, kPi, 0.0));
    // Controlled -sigma_z on the Ep branch.
    add(make_pulse(A, RED, Gp, Ep, kPi, 0.0));
    add(make_pulse(T, RED, gq, epq, 2.0 * kPi, 0.0));
    add(make_pulse(A, RED, Gp, Ep, kPi, 0.0));
    // Final rotations: R_y(pi/2) on (G,E), (Gp,Ep), (G,Gp), (E,Ep).
    add(make_pulse(A, CAR, G, E, hp, -hp));
    add(make_pulse(A, CAR, Gp, Ep, hp, -hp));
    add(make_pulse(A, RAM, G, Gp, hp, -hp));
    add(make_pulse(A, RAM, E, Ep, hp, -hp));
    return prog;
}

StateVector initial_pulse_state(const std::vector<cplx>& chi,
                                const IonLevelScheme& scheme) {
    require(chi.size() == 4, "initial_pulse_state: chi needs 4 amplitudes");
    const double n2 = active_kernels().sum_abs2(chi.data(), chi.size());
    require(std::abs(n2 - 1.0) <= 1e-9,
            "initial_pulse_state: chi not normalized");
    const double inv = 1.0 / std::sqrt(n2);

    std::vector<cplx> amps(scheme.total_dim() * 2, cplx(0.0, 0.0));
    for (std::size_t t = 0; t < 2; ++t)
        for (std::size_t s = 0; s < 2; ++s)
            amps[scheme.index(0, t, 0) * 2 + s] = chi[t * 2 + s] * inv;
    return StateVector({8, 3, scheme.phonon_dim(), 2}, std::move(amps));
}

double gate_pulse_fidelity(const ProtocolState& gate_final,
                           const StateVector& pulse_final,
                           const IonLevelScheme& scheme) {
    require(pulse_final.dim() == scheme.total_dim() * 2,
            "gate_pulse_fidelity: pulse state must carry the spectator");
    cplx overlap(0.0, 0.0);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t t = 0; t < 2; ++t)
            for (std::size_t s = 0; s < 2; ++s)
                overlap += std::conj(gate_final.state.amps[a * 4 + t * 2 + s]) *
                           pulse_final.amps[scheme.index(a, t, 0) * 2 + s];
    return std::abs(overlap);
}

double phonon_excess(const StateVector& state, const IonLevelScheme& scheme) {
    const std::size_t base = scheme.total_dim();
    const std::size_t extra = state.dim() / base;
    require(extra * base == state.dim(), "phonon_excess: dimension mismatch");
    const std::size_t np = scheme.phonon_dim();
    double pop = 0.0;
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t t = 0; t < 3; ++t)
            for (std::size_t n = 1; n < np; ++n)
                pop += active_kernels().sum_abs2(
                    state.amps.data() + scheme.index(a, t, n) * extra, extra);
    return pop;
}

ProbVector pulse_probabilities(const StateVector& state,
                               const IonLevelScheme& scheme) {
    const std::size_t base = scheme.total_dim();
    const std::size_t extra = state.dim() / base;
    require(extra * base == state.dim(),
            "pulse_probabilities: dimension mismatch");
    const std::size_t np = scheme.phonon_dim();
    double p[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t t = 0; t < 3; ++t)
            for (std::size_t n = 0; n < np; ++n)
                p[a] += active_kernels().sum_abs2(
                    state.amps.data() + scheme.index(a, t, n) * extra, extra);
    return ProbVector{p[0], p[1], p[2], p[3]};
}

ReadoutPlan compile_readout(const IonLevelScheme& scheme) {
    (void)scheme.phonon_dim();
    const auto A = IonName::ancilla;
    const auto CAR = PulseKind::carrier;
    const auto RAM = PulseKind::raman_carrier;
    const int G = 0, Gp = 1, E = 2, Ep = 3, D5a = 4, D5b = 5, D5c = 6,
              D3aux = 7;

    ReadoutPlan plan;
    plan.mapping.label = "readout";
    auto add = [&plan](Pulse p) { plan.mapping.pulses.push_back(p); };
    // Shelve the dark branches, park G out of the way and bring it back
    // (it returns with an overall minus sign, irrelevant to populations).
    add(make_pulse(A, RAM, E, D5a, kPi, 0.0));
    add(make_pulse(A, RAM, Ep, D5b, kPi, 0.0));
    add(make_pulse(A, CAR, G, D3aux, kPi, 0.0));
    add(make_pulse(A, CAR, Gp, D5c, kPi, 0.0));
    add(make_pulse(A, CAR, G, D3aux, kPi, 0.0));

    plan.steps[0] = CascadeStep{std::nullopt, AncillaLevel::G, true};
    plan.steps[1] = CascadeStep{make_pulse(A, CAR, Gp, D5c, kPi, 0.0),
                                AncillaLevel::Gp, true};
    plan.steps[2] = CascadeStep{make_pulse(A, CAR, G, D5a, kPi, 0.0),
                                AncillaLevel::E, true};
    plan.steps[3] = CascadeStep{std::nullopt, AncillaLevel::Ep, false};
    return plan;
}

namespace {

// Population of the bright 4S manifold {G, Gp}.
double bright_population(const std::vector<cplx>& amps,
                         const IonLevelScheme& scheme, std::size_t extra) {
    double pop = 0.0;
    const std::size_t np = scheme.phonon_dim();
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t t = 0; t < 3; ++t)
            for (std::size_t n = 0; n < np; ++n)
                pop += active_kernels().sum_abs2(
                    amps.data() + scheme.index(a, t, n) * extra, extra);
    return pop;
}

void project_dark(std::vector<cplx>& amps, const IonLevelScheme& scheme,
                  std::size_t extra) {
    const std::size_t np = scheme.phonon_dim();
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t t = 0; t < 3; ++t)
            for (std::size_t n = 0; n < np; ++n) {
                cplx* row = amps.data() + scheme.index(a, t, n) * extra;
                for (std::size_t e = 0; e < extra; ++e) row[e] = cplx(0.0, 0.0);
            }
}

void apply_unshelve(std::vector<cplx>& amps, const Pulse& p,
                    const IonLevelScheme& scheme, std::size_t extra) {
    const ComplexMatrix u = pulse_unitary(p, scheme);
    std::vector<cplx> next(amps.size());
    active_kernels().matmul(u.entries.data(), amps.data(), next.data(),
                            scheme.total_dim(), scheme.total_dim(), extra);
    amps.swap(next);
}

// Absolute (unnormalized) probability of each cascade outcome: keep the
// dark remainder unnormalized so each step's bright population is already
// the joint probability of reaching and passing it.
std::array<double, 4> cascade_absolute_probs(const StateVector& mapped,
                                             const IonLevelScheme& scheme,
                                             const ReadoutPlan& plan,
                                             std::size_t extra) {
    std::vector<cplx> cur = mapped.amps;
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const CascadeStep& step = plan.steps[k];
        if (step.unshelve) apply_unshelve(cur, *step.unshelve, scheme, extra);
        if (step.has_test) {
            out[k] = bright_population(cur, scheme, extra);
            project_dark(cur, scheme, extra);
        } else {
            out[k] = active_kernels().sum_abs2(cur.data(), cur.size());
        }
    }
    return out;
}

std::size_t extra_of(const StateVector& state, const IonLevelScheme& scheme,
                     const char* who) {
    const std::size_t base = scheme.total_dim();
    const std::size_t extra = state.dim() / base;
    require(extra * base == state.dim(),
            std::string(who) + ": dimension mismatch");
    return extra;
}

}  // namespace

ProbVector cascade_probabilities(const StateVector& mapped,
                                 const IonLevelScheme& scheme,
                                 const ReadoutPlan& plan) {
    const std::size_t extra = extra_of(mapped, scheme, "cascade_probabilities");
    const auto p = cascade_absolute_probs(mapped, scheme, plan, extra);
    return ProbVector{p[0], p[1], p[2], p[3]};
}

FluorescenceOutcome measure_cascade(const StateVector& mapped,
                                    const IonLevelScheme& scheme,
                                    const ReadoutPlan& plan, Rng& rng) {
    const std::size_t extra = extra_of(mapped, scheme, "measure_cascade");
    std::vector<cplx> cur = mapped.amps;
    double norm2 = active_kernels().sum_abs2(cur.data(), cur.size());
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const CascadeStep& step = plan.steps[k];
        if (step.unshelve) apply_unshelve(cur, *step.unshelve, scheme, extra);
        if (!step.has_test)
            return FluorescenceOutcome{step.outcome, static_cast<int>(k + 1)};
        if (norm2 <= 1e-300) break;
        const double p_bright = bright_population(cur, scheme, extra);
        if (uniform01(rng) < p_bright / norm2)
            return FluorescenceOutcome{step.outcome, static_cast<int>(k + 1)};
        project_dark(cur, scheme, extra);
        norm2 = active_kernels().sum_abs2(cur.data(), cur.size());
    }
    return FluorescenceOutcome{AncillaLevel::Ep, 4};
}

FluorescenceOutcome measure_cascade(const StateVector& mapped,
                                    const IonLevelScheme& scheme,
                                    const ReadoutPlan& plan,
                                    std::uint64_t seed) {
    Rng rng(seed);
    return measure_cascade(mapped, scheme, plan, rng);
}

std::array<std::uint64_t, 4> cascade_sample_counts(
    const StateVector& mapped, const IonLevelScheme& scheme,
    const ReadoutPlan& plan, std::uint64_t shots, std::uint64_t seed) {
    require(shots >= 1, "cascade_sample_counts: shots must be at least 1");
    const std::size_t extra =
        extra_of(mapped, scheme, "cascade_sample_counts");
    const auto abs_p = cascade_absolute_probs(mapped, scheme, plan, extra);

    // Conditional bright probability at each tested step, given all
    // previous tests were dark.
    double remaining = abs_p[0] + abs_p[1] + abs_p[2] + abs_p[3];
    double cond[3];
    for (std::size_t k = 0; k < 3; ++k) {
        cond[k] = remaining > 1e-300 ? abs_p[k] / remaining : 0.0;
        remaining -= abs_p[k];
    }

    Rng rng(seed);
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t i = 0; i < shots; ++i) {
        // Draw lazily, one uniform per performed test, so the stream
        // matches shot-by-shot measure_cascade walks with a shared rng.
        std::size_t outcome = 3;
        for (std::size_t k = 0; k < 3; ++k) {
            if (uniform01(rng) < cond[k]) {
                outcome = k;
                break;
            }
        }
        ++counts[outcome];
    }
    return counts;
}

std::string serialize_program(const PulseProgram& program) {
    std::string out;
    for (const Pulse& p : program.pulses) {
        const char* const* names =
            (p.ion == IonName::ancilla) ? kAncillaNames : kTargetNames;
        out += kIonNames[static_cast<int>(p.ion)];
        out += ' ';
        out += kKindNames[static_cast<int>(p.kind)];
        out += ' ';
        out += names[p.lower];
        out += ' ';
        out += names[p.upper];
        out += ' ';
        out += format_g12(p.theta);
        out += ' ';
        out += format_g12(p.phi);
        out += '\n';
    }
    return out;
}

namespace {

int lookup(const char* const* names, int count, const std::string& token) {
    for (int i = 0; i < count; ++i)
        if (token == names[i]) return i;
    return -1;
}

double parse_angle(const std::string& token, std::size_t line_no,
                   const char* field) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    require(pos == token.size() && std::isfinite(v),
            "pulse program line " + std::to_string(line_no) + ": bad " +
                field + " '" + token + "'");
    return v;
}

}  // namespace

PulseProgram parse_program(const std::string& text) {
    PulseProgram prog;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string ion_tok, kind_tok, lo_tok, up_tok, theta_tok, phi_tok,
            extra_tok;
        ls >> ion_tok >> kind_tok >> lo_tok >> up_tok >> theta_tok >> phi_tok;
        require(!phi_tok.empty() && !(ls >> extra_tok),
                "pulse program line " + std::to_string(line_no) +
                    ": expected 'ion kind lower upper theta phi'");
        const int ion = lookup(kIonNames, 2, ion_tok);
        require(ion >= 0, "pulse program line " + std::to_string(line_no) +
                              ": unknown ion '" + ion_tok + "'");
        const int kind = lookup(kKindNames, 4, kind_tok);
        require(kind >= 0, "pulse program line " + std::to_string(line_no) +
                               ": unknown pulse kind '" + kind_tok + "'");
        const char* const* names =
            (ion == 0) ? kAncillaNames : kTargetNames;
        const int count = (ion == 0) ? 8 : 3;
        const int lo = lookup(names, count, lo_tok);
        require(lo >= 0, "pulse program line " + std::to_string(line_no) +
                             ": unknown level '" + lo_tok + "'");
        const int up = lookup(names, count, up_tok);
        require(up >= 0, "pulse program line " + std::to_string(line_no) +
                             ": unknown level '" + up_tok + "'");
        const double theta = parse_angle(theta_tok, line_no, "theta");
        const double phi = parse_angle(phi_tok, line_no, "phi");
        Pulse p{static_cast<IonName>(ion), static_cast<PulseKind>(kind), lo,
                up, theta, phi};
        validate_pulse(p);
        prog.pulses.push_back(p);
    }
    return prog;
}

}  // namespace tetraq
