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

#include "tetraq/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tetraq/tolerances.hpp"

namespace tetraq {

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::json;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// The fixed pure product state mixed in by bias mode: both qubits tilted
// off every Pauli axis so no term of the bias formula degenerates.
std::vector<cplx> bias_product_state() {
    const double a = 0.3, b = 0.7, phase = 0.4;
    const cplx psi[2] = {cplx(std::cos(a), 0.0), cplx(std::sin(a), 0.0)};
    const cplx phi[2] = {cplx(std::cos(b), 0.0),
                         cplx(std::sin(b) * std::cos(phase),
                              std::sin(b) * std::sin(phase))};
    std::vector<cplx> amps(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) amps[i * 2 + j] = psi[i] * phi[j];
    return amps;
}

struct GateQuantities {
    ProbVector p;
    BlochVector s;
    double c_protocol = 0.0;
    double c_oracle = 0.0;
    bool clamped = false;
    ProtocolState final_state;
};

GateQuantities gate_pipeline(const std::vector<cplx>& chi) {
    GateQuantities g;
    g.final_state = run_protocol(chi);
    g.p = ancilla_probabilities(g.final_state);
    g.s = bloch_from_probabilities(g.p);
    g.c_protocol = clamp01(concurrence_from_probabilities(g.p, &g.clamped));
    g.c_oracle = concurrence_oracle(chi);
    return g;
}

struct PulseQuantities {
    StateVector final_state;
    ExecutionDiagnostics diag;
    double fidelity = 0.0;
};

PulseQuantities pulse_pipeline(const std::vector<cplx>& chi,
                               const IonLevelScheme& scheme,
                               const ProtocolState& gate_final) {
    PulseQuantities q;
    q.final_state = execute(compile_protocol(scheme),
                            initial_pulse_state(chi, scheme), scheme, &q.diag);
    q.fidelity = gate_pulse_fidelity(gate_final, q.final_state, scheme);
    return q;
}

// --- JSON writer with a fixed key order, %.12g floats ---

struct Writer {
    std::string out;
    int depth = 0;

    void line(const std::string& text) {
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += text;
        out += '\n';
    }
};

std::string quoted(const char* s) { return std::string("\"") + s + "\""; }

void write_prob(Writer& w, const char* key, const ProbVector& p, bool comma) {
    w.line(quoted(key) + ": {");
    ++w.depth;
    w.line("\"p_g\": " + format_sig12(p.p_g) + ",");
    w.line("\"p_gp\": " + format_sig12(p.p_gp) + ",");
    w.line("\"p_e\": " + format_sig12(p.p_e) + ",");
    w.line("\"p_ep\": " + format_sig12(p.p_ep));
    --w.depth;
    w.line(comma ? "}," : "}");
}

void write_estimate(Writer& w, const char* key, const Estimate& e,
                    bool comma) {
    w.line(quoted(key) + ": {");
    ++w.depth;
    w.line("\"value\": " + format_sig12(e.value) + ",");
    w.line("\"std_error\": " + format_sig12(e.std_error));
    --w.depth;
    w.line(comma ? "}," : "}");
}

}  // namespace

std::string format_sig12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

const char* method_name(Method method) {
    return method == Method::plugin ? "plugin" : "unbiased_sum_of_squares";
}

std::optional<Method> method_from_name(const std::string& name) {
    if (name == "plugin") return Method::plugin;
    if (name == "unbiased_sum_of_squares" || name == "unbiased")
        return Method::unbiased_sum_of_squares;
    return std::nullopt;
}

std::optional<RunMode> mode_from_name(const std::string& name) {
    if (name == "ideal") return RunMode::ideal;
    if (name == "pulse") return RunMode::pulse;
    if (name == "sample") return RunMode::sample;
    if (name == "sweep") return RunMode::sweep;
    if (name == "bias") return RunMode::bias;
    return std::nullopt;
}

std::vector<cplx> normalize_state(std::vector<cplx> amps,
                                  std::string* warning) {
    require(amps.size() == 4, "state: expected 4 amplitudes, got " +
                                  std::to_string(amps.size()));
    double n2 = 0.0;
    for (const cplx& a : amps) n2 += std::norm(a);
    const double dev = std::abs(n2 - 1.0);
    require(dev <= 1e-6, "state: squared norm " + format_sig12(n2) +
                             " deviates from 1 by more than 1e-6");
    if (dev > kTol.normalization) {
        if (warning)
            *warning = "state renormalized (squared norm was " +
                       format_sig12(n2) + ")";
        const double inv = 1.0 / std::sqrt(n2);
        for (cplx& a : amps) a *= inv;
    }
    return amps;
}

std::vector<cplx> parse_state_spec(const std::string& spec) {
    std::string text = spec;
    const std::size_t first = spec.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || spec[first] != '[') {
        std::ifstream in(spec);
        require(in.good(), "state: cannot open file '" + spec + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("state: malformed JSON: ") +
                                    e.what());
    }
    require(parsed.is_array() && parsed.size() == 4,
            "state: expected an array of 4 [re, im] pairs");
    std::vector<cplx> amps(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const json& pair = parsed[i];
        require(pair.is_array() && pair.size() == 2 &&
                    pair[0].is_number() && pair[1].is_number(),
                "state: amplitude " + std::to_string(i) +
                    " is not a [re, im] pair");
        amps[i] = cplx(pair[0].get<double>(), pair[1].get<double>());
    }
    return amps;
}

RunResult run(const RunConfig& config) {
    require(config.mode == RunMode::ideal || config.mode == RunMode::pulse ||
                config.mode == RunMode::sample,
            "run: sweep and bias modes go through run_serialized");
    const std::vector<cplx> chi = normalize_state(config.state, nullptr);
    const GateQuantities gate = gate_pipeline(chi);

    RunResult r;
    r.probabilities = gate.p;
    r.bloch = gate.s;
    r.concurrence_protocol = gate.c_protocol;
    r.concurrence_oracle = gate.c_oracle;
    r.diagnostics.clamped = gate.clamped;
    if (config.mode == RunMode::ideal) return r;

    IonLevelScheme scheme;
    scheme.fock_cutoff = config.fock_cutoff;
    const PulseQuantities pulse = pulse_pipeline(chi, scheme, gate.final_state);
    r.diagnostics.leakage = pulse.diag.truncation_leakage;
    r.diagnostics.pulse_fidelity = pulse.fidelity;

    if (config.mode == RunMode::pulse) {
        // Report the pulse-level populations; the gate pipeline stays the
        // oracle side of the fidelity diagnostic.
        r.probabilities = pulse_probabilities(pulse.final_state, scheme);
        r.bloch = bloch_from_probabilities(r.probabilities);
        bool clamped = false;
        r.concurrence_protocol =
            clamp01(concurrence_from_probabilities(r.probabilities, &clamped));
        r.diagnostics.clamped = clamped;
        return r;
    }

    // sample: map for readout, run the fluorescence cascade shot by shot.
    const ReadoutPlan plan = compile_readout(scheme);
    ExecutionDiagnostics map_diag;
    const StateVector mapped =
        execute(plan.mapping, pulse.final_state, scheme, &map_diag);
    r.diagnostics.leakage =
        std::max(r.diagnostics.leakage, map_diag.truncation_leakage);

    ShotRecord rec;
    rec.counts =
        cascade_sample_counts(mapped, scheme, plan, config.shots, config.seed);
    rec.shots = config.shots;
    rec.seed = config.seed;

    Estimates est;
    est.method = config.method;
    est.shots = rec.shots;
    est.seed = rec.seed;
    est.counts = rec.counts;
    const double inv = 1.0 / static_cast<double>(rec.shots);
    est.probabilities =
        ProbVector{static_cast<double>(rec.counts[0]) * inv,
                   static_cast<double>(rec.counts[1]) * inv,
                   static_cast<double>(rec.counts[2]) * inv,
                   static_cast<double>(rec.counts[3]) * inv};
    bool est_clamped = false;
    est.concurrence_squared =
        estimate_concurrence_squared(rec, config.method, &est_clamped);
    est.concurrence = estimate_concurrence(rec, config.method);
    est.bloch = estimate_bloch(rec);
    r.diagnostics.clamped = r.diagnostics.clamped || est_clamped;
    r.diagnostics.physicality_flag = est.bloch.outside_unit_ball;
    r.estimates = est;
    return r;
}

std::vector<SweepRow> run_sweep(int alpha_points) {
    require(alpha_points >= 2, "sweep: need at least 2 alpha points");
    std::vector<SweepRow> rows(static_cast<std::size_t>(alpha_points));
    for (int i = 0; i < alpha_points; ++i) {
        const double alpha =
            (kPi / 2.0) * static_cast<double>(i) /
            static_cast<double>(alpha_points - 1);
        const std::vector<cplx> chi = {cplx(std::cos(alpha), 0.0),
                                       cplx(0.0, 0.0), cplx(0.0, 0.0),
                                       cplx(std::sin(alpha), 0.0)};
        const GateQuantities g = gate_pipeline(chi);
        rows[static_cast<std::size_t>(i)] =
            SweepRow{alpha, g.c_protocol, g.c_oracle};
    }
    return rows;
}

std::vector<BiasRow> run_bias(const std::vector<cplx>& chi) {
    const std::vector<cplx> clean = normalize_state(chi, nullptr);
    const DensityMatrix rho_prime =
        DensityMatrix::from_pure(bias_product_state());
    const double lambdas[] = {1e-4, 1e-3, 1e-2, 1e-1};
    std::vector<BiasRow> rows;
    rows.reserve(4);
    for (double lambda : lambdas) {
        const double predicted =
            mixed_state_bias_predicted(rho_prime, clean, lambda);
        const double actual = mixed_state_bias_actual(rho_prime, clean, lambda);
        rows.push_back(BiasRow{lambda, predicted, actual, actual - predicted});
    }
    return rows;
}

std::string serialize_run_result(const RunResult& result) {
    Writer w;
    w.line("{");
    ++w.depth;
    write_prob(w, "probabilities", result.probabilities, true);
    w.line("\"bloch\": {");
    ++w.depth;
    w.line("\"sx\": " + format_sig12(result.bloch.sx) + ",");
    w.line("\"sy\": " + format_sig12(result.bloch.sy) + ",");
    w.line("\"sz\": " + format_sig12(result.bloch.sz));
    --w.depth;
    w.line("},");
    w.line("\"concurrence_protocol\": " +
           format_sig12(result.concurrence_protocol) + ",");
    w.line("\"concurrence_oracle\": " + format_sig12(result.concurrence_oracle) +
           ",");
    if (!result.estimates) {
        w.line("\"estimates\": null,");
    } else {
        const Estimates& e = *result.estimates;
        w.line("\"estimates\": {");
        ++w.depth;
        w.line("\"method\": " + quoted(method_name(e.method)) + ",");
        w.line("\"shots\": " + std::to_string(e.shots) + ",");
        w.line("\"seed\": " + std::to_string(e.seed) + ",");
        w.line("\"counts\": [" + std::to_string(e.counts[0]) + ", " +
               std::to_string(e.counts[1]) + ", " +
               std::to_string(e.counts[2]) + ", " +
               std::to_string(e.counts[3]) + "],");
        write_prob(w, "probabilities", e.probabilities, true);
        write_estimate(w, "concurrence", e.concurrence, true);
        write_estimate(w, "concurrence_squared", e.concurrence_squared, true);
        w.line("\"bloch\": {");
        ++w.depth;
        w.line("\"sx\": " + format_sig12(e.bloch.value.sx) + ",");
        w.line("\"sy\": " + format_sig12(e.bloch.value.sy) + ",");
        w.line("\"sz\": " + format_sig12(e.bloch.value.sz) + ",");
        w.line("\"std_error_sx\": " + format_sig12(e.bloch.std_error.sx) + ",");
        w.line("\"std_error_sy\": " + format_sig12(e.bloch.std_error.sy) + ",");
        w.line("\"std_error_sz\": " + format_sig12(e.bloch.std_error.sz));
        --w.depth;
        w.line("}");
        --w.depth;
        w.line("},");
    }
    w.line("\"diagnostics\": {");
    ++w.depth;
    w.line("\"leakage\": " + format_sig12(result.diagnostics.leakage) + ",");
    w.line(std::string("\"clamped\": ") +
           (result.diagnostics.clamped ? "true" : "false") + ",");
    w.line(std::string("\"physicality_flag\": ") +
           (result.diagnostics.physicality_flag ? "true" : "false") + ",");
    w.line("\"pulse_fidelity\": " +
           (result.diagnostics.pulse_fidelity
                ? format_sig12(*result.diagnostics.pulse_fidelity)
                : std::string("null")));
    --w.depth;
    w.line("}");
    --w.depth;
    w.line("}");
    return w.out;
}

namespace {

ProbVector prob_from_json(const json& j) {
    return ProbVector{j.at("p_g").get<double>(), j.at("p_gp").get<double>(),
                      j.at("p_e").get<double>(), j.at("p_ep").get<double>()};
}

}  // namespace

RunResult parse_run_result(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("result: malformed JSON: ") +
                                    e.what());
    }
    RunResult r;
    r.probabilities = prob_from_json(j.at("probabilities"));
    const json& b = j.at("bloch");
    r.bloch = BlochVector{b.at("sx").get<double>(), b.at("sy").get<double>(),
                          b.at("sz").get<double>()};
    r.concurrence_protocol = j.at("concurrence_protocol").get<double>();
    r.concurrence_oracle = j.at("concurrence_oracle").get<double>();
    const json& d = j.at("diagnostics");
    r.diagnostics.leakage = d.at("leakage").get<double>();
    r.diagnostics.clamped = d.at("clamped").get<bool>();
    r.diagnostics.physicality_flag = d.at("physicality_flag").get<bool>();
    if (!d.at("pulse_fidelity").is_null())
        r.diagnostics.pulse_fidelity = d.at("pulse_fidelity").get<double>();
    const json& ej = j.at("estimates");
    if (!ej.is_null()) {
        Estimates e;
        const auto method = method_from_name(ej.at("method").get<std::string>());
        require(method.has_value(), "result: unknown estimator method");
        e.method = *method;
        e.shots = ej.at("shots").get<std::uint64_t>();
        e.seed = ej.at("seed").get<std::uint64_t>();
        for (std::size_t i = 0; i < 4; ++i)
            e.counts[i] = ej.at("counts").at(i).get<std::uint64_t>();
        e.probabilities = prob_from_json(ej.at("probabilities"));
        e.concurrence =
            Estimate{ej.at("concurrence").at("value").get<double>(),
                     ej.at("concurrence").at("std_error").get<double>(),
                     e.method};
        e.concurrence_squared =
            Estimate{ej.at("concurrence_squared").at("value").get<double>(),
                     ej.at("concurrence_squared").at("std_error").get<double>(),
                     e.method};
        const json& eb = ej.at("bloch");
        e.bloch.value =
            BlochVector{eb.at("sx").get<double>(), eb.at("sy").get<double>(),
                        eb.at("sz").get<double>()};
        e.bloch.std_error = BlochVector{eb.at("std_error_sx").get<double>(),
                                        eb.at("std_error_sy").get<double>(),
                                        eb.at("std_error_sz").get<double>()};
        e.bloch.outside_unit_ball = r.diagnostics.physicality_flag;
        r.estimates = e;
    }
    return r;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "alpha,c_protocol,c_oracle\n";
    for (const SweepRow& row : rows) {
        out += format_sig12(row.alpha);
        out += ',';
        out += format_sig12(row.c_protocol);
        out += ',';
        out += format_sig12(row.c_oracle);
        out += '\n';
    }
    return out;
}

std::string bias_csv(const std::vector<BiasRow>& rows) {
    std::string out = "lambda,predicted_bias,actual_bias,residual\n";
    for (const BiasRow& row : rows) {
        out += format_sig12(row.lambda);
        out += ',';
        out += format_sig12(row.predicted_bias);
        out += ',';
        out += format_sig12(row.actual_bias);
        out += ',';
        out += format_sig12(row.residual);
        out += '\n';
    }
    return out;
}

RunOutput run_serialized(const RunConfig& config) {
    RunOutput out;
    RunConfig cfg = config;
    cfg.state = normalize_state(config.state, &out.warning);
    switch (cfg.mode) {
        case RunMode::sweep:
            out.text = sweep_csv(run_sweep(cfg.alpha_points));
            break;
        case RunMode::bias:
            out.text = bias_csv(run_bias(cfg.state));
            break;
        default: {
            const RunResult r = run(cfg);
            out.text = serialize_run_result(r);
            out.invalid_run = r.diagnostics.leakage > kTol.leakage;
            break;
        }
    }
    return out;
}

}  // namespace tetraq
