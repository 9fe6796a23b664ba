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

// Shot-noise simulation and statistical estimation: multinomial sampling of
// the four ancilla outcomes, probability and Bloch-vector estimates, and
// propagation to concurrence with delta-method standard errors.

#ifndef TETRAQ_ESTIMATOR_HPP_
#define TETRAQ_ESTIMATOR_HPP_

#include <array>
#include <cstdint>

#include "tetraq/gate_model.hpp"
#include "tetraq/rng.hpp"

namespace tetraq {

enum class Method {
    plugin,                   // substitute n_A/N directly
    unbiased_sum_of_squares,  // sum n_A(n_A-1)/(N(N-1)) for sum of p^2
};

// One simulated measurement run: counts sum to shots.
struct ShotRecord {
    std::array<std::uint64_t, 4> counts{};  // order G, G', E, E'
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;  // always >= 0
    Method method = Method::plugin;
};

struct BlochEstimate {
    BlochVector value;
    BlochVector std_error;  // per-component, sqrt((3 - s_i^2)/N)
    bool outside_unit_ball = false;  // reported raw, never projected
};

// Multinomial draw by inverse CDF, one uniform per shot. Same (p, shots,
// seed) gives identical counts. shots must be >= 1.
ShotRecord sample_counts(const ProbVector& p, std::uint64_t shots,
                         std::uint64_t seed);

// Estimator of sum_A P_A^2. The plugin form is biased upward by
// (1 - sum p^2)/N; the unbiased form needs shots >= 2.
double estimate_sum_p_squared(const ShotRecord& rec, Method method);

// Squared concurrence 4(1 - 3 sum P^2), clamped to [0, 4]; *clamped is set
// when the clamp engaged. Standard error by the delta method on the
// multinomial covariance evaluated at the empirical frequencies (the two
// methods differ only at O(1/N^2) there, so they share the formula).
Estimate estimate_concurrence_squared(const ShotRecord& rec, Method method,
                                      bool* clamped = nullptr);

// Concurrence sqrt of the clamped square. The delta method gives
// SE(C) = SE(C^2)/(2C), degenerate at C = 0 where sqrt(SE(C^2)) is the
// honest scale of the fluctuation instead.
Estimate estimate_concurrence(const ShotRecord& rec, Method method,
                              bool* clamped = nullptr);

BlochEstimate estimate_bloch(const ShotRecord& rec);

// Bootstrap alternative to the delta-method standard error: resample
// counts from the empirical frequencies, recompute the (clamped) estimate,
// report its standard deviation. value carries the original point estimate
// of C^2 (squared = true) or C.
Estimate bootstrap_concurrence(const ShotRecord& rec, Method method,
                               bool squared, std::size_t resamples,
                               std::uint64_t seed);

}  // namespace tetraq

#endif  // TETRAQ_ESTIMATOR_HPP_
