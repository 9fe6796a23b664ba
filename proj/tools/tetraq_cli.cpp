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

// Command-line front end. Exit codes: 0 success, 1 error, 2 run completed
// but the truncation-leakage diagnostic fired.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "tetraq/kernels.hpp"
#include "tetraq/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Four-level-ancilla concurrence protocol simulator: gate-level and "
        "trapped-ion pulse-level pipelines with shot-noise estimation"};

    std::string mode = "ideal";
    std::string state_spec;
    std::string method = "plugin";
    std::string out_path;
    std::string backend = "auto";
    int alpha_points = 33;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 12345;
    int fock_cutoff = 3;

    app.add_option("--mode", mode,
                   "Run mode: ideal | pulse | sample | sweep | bias")
        ->capture_default_str();
    app.add_option("--state", state_spec,
                   "Input state |chi>: inline JSON [[re,im],...] in basis "
                   "order gg, ge, eg, ee, or a path to a file holding the "
                   "same (default: Bell state)");
    app.add_option("--alpha-points", alpha_points,
                   "Grid points over [0, pi/2] in sweep mode")
        ->capture_default_str();
    app.add_option("--shots", shots, "Measurement shots in sample mode")
        ->capture_default_str();
    app.add_option("--seed", seed, "Random seed for sampling")
        ->capture_default_str();
    app.add_option("--method", method,
                   "Estimator: plugin | unbiased_sum_of_squares")
        ->capture_default_str();
    app.add_option("--fock-cutoff", fock_cutoff,
                   "Highest retained phonon number in pulse-level modes")
        ->capture_default_str();
    app.add_option("--out", out_path,
                   "Output file (default: standard output)");
    app.add_option("--backend", backend,
                   "Compute kernels: auto | scalar | avx2")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!tetraq::select_kernels(backend)) {
            std::cerr << "error: backend '" << backend
                      << "' is not available on this machine\n";
            return 1;
        }

        tetraq::RunConfig config;
        const auto mode_value = tetraq::mode_from_name(mode);
        if (!mode_value) {
            std::cerr << "error: unknown mode '" << mode << "'\n";
            return 1;
        }
        config.mode = *mode_value;
        const auto method_value = tetraq::method_from_name(method);
        if (!method_value) {
            std::cerr << "error: unknown method '" << method << "'\n";
            return 1;
        }
        config.method = *method_value;
        if (!state_spec.empty())
            config.state = tetraq::parse_state_spec(state_spec);
        config.alpha_points = alpha_points;
        config.shots = shots;
        config.seed = seed;
        config.fock_cutoff = fock_cutoff;
        config.output_path = out_path;

        const tetraq::RunOutput result = tetraq::run_serialized(config);
        if (!result.warning.empty())
            std::cerr << "warning: " << result.warning << "\n";

        if (out_path.empty()) {
            std::cout << result.text;
        } else {
            std::ofstream out(out_path);
            if (!out.good()) {
                std::cerr << "error: cannot open output file '" << out_path
                          << "'\n";
                return 1;
            }
            out << result.text;
        }
        if (result.invalid_run) {
            std::cerr << "warning: phonon-truncation leakage diagnostic "
                         "raised; rerun with a higher --fock-cutoff\n";
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
