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

// Run orchestration: configuration, the five run modes, and the serialized
// output formats (JSON for single runs, CSV for sweeps).

#ifndef TETRAQ_RUN_HPP_
#define TETRAQ_RUN_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tetraq/estimator.hpp"
#include "tetraq/gate_model.hpp"
#include "tetraq/ion_pulse.hpp"

namespace tetraq {

enum class RunMode { ideal, pulse, sample, sweep, bias };

struct RunConfig {
    RunMode mode = RunMode::ideal;
    // |chi> amplitudes in basis order gg, ge, eg, ee.
    std::vector<cplx> state = {cplx(1.0 / 1.4142135623730951, 0.0),
                               cplx(0.0, 0.0), cplx(0.0, 0.0),
                               cplx(1.0 / 1.4142135623730951, 0.0)};
    int alpha_points = 33;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 12345;
    Method method = Method::plugin;
    int fock_cutoff = 3;
    std::string output_path;  // empty: caller prints to stdout
};

struct Estimates {
    Method method = Method::plugin;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::array<std::uint64_t, 4> counts{};
    ProbVector probabilities;  // empirical frequencies
    Estimate concurrence;
    Estimate concurrence_squared;
    BlochEstimate bloch;
};

struct Diagnostics {
    double leakage = 0.0;  // worst phonon-truncation guard population
    bool clamped = false;
    bool physicality_flag = false;  // Bloch estimate outside the unit ball
    std::optional<double> pulse_fidelity;  // pulse and sample modes
};

struct RunResult {
    ProbVector probabilities;
    BlochVector bloch;
    double concurrence_protocol = 0.0;
    double concurrence_oracle = 0.0;
    std::optional<Estimates> estimates;
    Diagnostics diagnostics;
};

struct SweepRow {
    double alpha = 0.0;
    double c_protocol = 0.0;
    double c_oracle = 0.0;
};

struct BiasRow {
    double lambda = 0.0;
    double predicted_bias = 0.0;
    double actual_bias = 0.0;
    double residual = 0.0;
};

// Single-state modes (ideal, pulse, sample). Sweep and bias go through
// run_sweep / run_bias and run_serialized.
RunResult run(const RunConfig& config);

// C(alpha) for |chi> = cos(alpha)|gg> + sin(alpha)|ee>, alpha on a uniform
// grid over [0, pi/2] with alpha_points >= 2 points.
std::vector<SweepRow> run_sweep(int alpha_points);

// Mixed-state bias table for rho = (1-lambda)|chi><chi| + lambda rho' with
// a fixed pure product rho', lambda in {1e-4, 1e-3, 1e-2, 1e-1}.
std::vector<BiasRow> run_bias(const std::vector<cplx>& chi);

std::string serialize_run_result(const RunResult& result);
RunResult parse_run_result(const std::string& text);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string bias_csv(const std::vector<BiasRow>& rows);

struct RunOutput {
    std::string text;
    bool invalid_run = false;  // leakage diagnostic raised
    std::string warning;       // renormalization notice, empty if none
};

// Dispatch on mode and serialize: JSON for single runs, CSV for sweeps.
RunOutput run_serialized(const RunConfig& config);

// Inline JSON ("[[re,im],...]", detected by a leading '[') or a path to a
// file holding the same. Throws with a field diagnostic on malformed input.
std::vector<cplx> parse_state_spec(const std::string& spec);

// Norm deviation <= 1e-12 passes through, <= 1e-6 renormalizes and fills
// *warning, anything worse throws.
std::vector<cplx> normalize_state(std::vector<cplx> amps,
                                  std::string* warning);

const char* method_name(Method method);
std::optional<Method> method_from_name(const std::string& name);
std::optional<RunMode> mode_from_name(const std::string& name);

// Fixed-format float used everywhere in serialized output: %.12g.
std::string format_sig12(double value);

}  // namespace tetraq

#endif  // TETRAQ_RUN_HPP_
