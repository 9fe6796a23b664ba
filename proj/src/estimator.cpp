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

#include "tetraq/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tetraq/tolerances.hpp"

namespace tetraq {

namespace {

std::array<double, 4> normalized_probs(const ProbVector& p) {
    std::array<double, 4> q{p.p_g, p.p_gp, p.p_e, p.p_ep};
    double sum = 0.0;
    for (double& v : q) {
        if (v < 0.0) {
            if (v < -kTol.prob_sum_loose)
                throw std::invalid_argument(
                    "sample_counts: negative probability");
            v = 0.0;
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kTol.prob_sum_loose)
        throw std::invalid_argument("sample_counts: probabilities sum to " +
                                    std::to_string(sum) + ", not 1");
    for (double& v : q) v /= sum;
    return q;
}

std::array<std::uint64_t, 4> draw_counts(const std::array<double, 4>& q,
                                         std::uint64_t shots, Rng& rng) {
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t i = 0; i < shots; ++i) {
        const double u = uniform01(rng);
        double acc = 0.0;
        std::size_t k = 3;  // rounding remainder lands in the last bin
        for (std::size_t j = 0; j < 3; ++j) {
            acc += q[j];
            if (u < acc) {
                k = j;
                break;
            }
        }
        ++counts[k];
    }
    return counts;
}

std::array<double, 4> frequencies(const ShotRecord& rec) {
    if (rec.shots == 0)
        throw std::invalid_argument("estimator: empty shot record");
    std::uint64_t total = 0;
    for (std::uint64_t n : rec.counts) total += n;
    if (total != rec.shots)
        throw std::invalid_argument("estimator: counts do not sum to shots");
    const double inv = 1.0 / static_cast<double>(rec.shots);
    return {static_cast<double>(rec.counts[0]) * inv,
            static_cast<double>(rec.counts[1]) * inv,
            static_cast<double>(rec.counts[2]) * inv,
            static_cast<double>(rec.counts[3]) * inv};
}

// Delta-method variance of 4 - 12 sum p^2 under multinomial sampling:
// gradient g_A = -24 p_A, Var = (sum g^2 p - (sum g p)^2) / N.
double c_squared_variance(const std::array<double, 4>& p, std::uint64_t n) {
    double lin = 0.0, quad = 0.0;
    for (double v : p) {
        const double g = -24.0 * v;
        lin += g * v;
        quad += g * g * v;
    }
    return (quad - lin * lin) / static_cast<double>(n);
}

Estimate c_squared_from_sum(double sum_sq, const std::array<double, 4>& freq,
                            std::uint64_t shots, Method method,
                            bool* clamped) {
    double value = 4.0 * (1.0 - 3.0 * sum_sq);
    bool hit = false;
    if (value < 0.0) {
        value = 0.0;
        hit = true;
    } else if (value > 4.0) {
        value = 4.0;
        hit = true;
    }
    if (clamped) *clamped = hit;
    return Estimate{value, std::sqrt(c_squared_variance(freq, shots)), method};
}

}  // namespace

ShotRecord sample_counts(const ProbVector& p, std::uint64_t shots,
                         std::uint64_t seed) {
    if (shots == 0)
        throw std::invalid_argument("sample_counts: shots must be at least 1");
    const auto q = normalized_probs(p);
    Rng rng(seed);
    return ShotRecord{draw_counts(q, shots, rng), shots, seed};
}

double estimate_sum_p_squared(const ShotRecord& rec, Method method) {
    const auto freq = frequencies(rec);
    if (method == Method::plugin) {
        double s = 0.0;
        for (double f : freq) s += f * f;
        return s;
    }
    if (rec.shots < 2)
        throw std::invalid_argument(
            "estimate_sum_p_squared: unbiased method needs at least 2 shots");
    const double n = static_cast<double>(rec.shots);
    double s = 0.0;
    for (std::uint64_t c : rec.counts) {
        const double cd = static_cast<double>(c);
        s += cd * (cd - 1.0);
    }
    return s / (n * (n - 1.0));
}

Estimate estimate_concurrence_squared(const ShotRecord& rec, Method method,
                                      bool* clamped) {
    const auto freq = frequencies(rec);
    return c_squared_from_sum(estimate_sum_p_squared(rec, method), freq,
                              rec.shots, method, clamped);
}

Estimate estimate_concurrence(const ShotRecord& rec, Method method,
                              bool* clamped) {
    const Estimate sq = estimate_concurrence_squared(rec, method, clamped);
    const double c = std::sqrt(sq.value);
    const double se =
        c > 1e-12 ? sq.std_error / (2.0 * c) : std::sqrt(sq.std_error);
    return Estimate{c, se, method};
}

BlochEstimate estimate_bloch(const ShotRecord& rec) {
    const auto freq = frequencies(rec);
    BlochEstimate out;
    out.value = bloch_from_probabilities(
        ProbVector{freq[0], freq[1], freq[2], freq[3]});
    const double n = static_cast<double>(rec.shots);
    out.std_error =
        BlochVector{std::sqrt((3.0 - out.value.sx * out.value.sx) / n),
                    std::sqrt((3.0 - out.value.sy * out.value.sy) / n),
                    std::sqrt((3.0 - out.value.sz * out.value.sz) / n)};
    out.outside_unit_ball = out.value.norm2() > 1.0 + 1e-12;
    return out;
}

Estimate bootstrap_concurrence(const ShotRecord& rec, Method method,
                               bool squared, std::size_t resamples,
                               std::uint64_t seed) {
    if (resamples < 2)
        throw std::invalid_argument(
            "bootstrap_concurrence: need at least 2 resamples");
    const auto freq = frequencies(rec);
    const ProbVector p{freq[0], freq[1], freq[2], freq[3]};
    Rng rng(seed);

    std::vector<double> values(resamples);
    const auto q = normalized_probs(p);
    for (std::size_t r = 0; r < resamples; ++r) {
        ShotRecord re{draw_counts(q, rec.shots, rng), rec.shots, seed};
        const Estimate e = squared
                               ? estimate_concurrence_squared(re, method)
                               : estimate_concurrence(re, method);
        values[r] = e.value;
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(resamples);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(resamples - 1);

    const Estimate point = squared ? estimate_concurrence_squared(rec, method)
                                   : estimate_concurrence(rec, method);
    return Estimate{point.value, std::sqrt(var), method};
}

}  // namespace tetraq
