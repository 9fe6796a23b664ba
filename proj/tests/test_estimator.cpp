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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tetraq/estimator.hpp"
#include "tetraq/gate_model.hpp"

using tetraq::BlochEstimate;
using tetraq::Estimate;
using tetraq::Method;
using tetraq::ProbVector;
using tetraq::ShotRecord;

namespace {

constexpr double kPi = 3.14159265358979323846;

const ProbVector kUniform{0.25, 0.25, 0.25, 0.25};

// Protocol probabilities of the separable |gg> input; sum of squares is
// exactly 1/3, so the true squared concurrence is 0.
const ProbVector kProductProbs{0.10566243270259354, 0.39433756729740643,
                               0.39433756729740643, 0.10566243270259354};

ShotRecord record(std::array<std::uint64_t, 4> counts) {
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    return ShotRecord{counts, total, 0};
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("sample_counts draws a reproducible multinomial") {
    const ShotRecord a = tetraq::sample_counts(kUniform, 1000, 5);
    const ShotRecord b = tetraq::sample_counts(kUniform, 1000, 5);
    const ShotRecord c = tetraq::sample_counts(kUniform, 1000, 6);
    CHECK(a.counts == b.counts);
    CHECK(a.counts != c.counts);
    CHECK(a.shots == 1000);
    CHECK(a.seed == 5);
    std::uint64_t total = 0;
    for (std::uint64_t n : a.counts) total += n;
    CHECK(total == 1000);

    // Frozen draws pin the uniform stream and the inverse-CDF walk; a
    // change here breaks every seeded reproducibility promise downstream.
    CHECK(tetraq::sample_counts(kUniform, 12, 42).counts ==
          std::array<std::uint64_t, 4>{3, 3, 3, 3});
    CHECK(tetraq::sample_counts(kProductProbs, 1000, 7).counts ==
          std::array<std::uint64_t, 4>{117, 397, 376, 110});

    // Degenerate distribution: every shot lands in the live bin.
    const ShotRecord point =
        tetraq::sample_counts(ProbVector{0.0, 1.0, 0.0, 0.0}, 50, 9);
    CHECK(point.counts == std::array<std::uint64_t, 4>{0, 50, 0, 0});

    CHECK_THROWS_AS(tetraq::sample_counts(kUniform, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        tetraq::sample_counts(ProbVector{-0.1, 0.5, 0.3, 0.3}, 10, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        tetraq::sample_counts(ProbVector{0.2, 0.2, 0.2, 0.2}, 10, 1),
        std::invalid_argument);
}

TEST_CASE("sum-of-squares estimators on hand-computed records") {
    // Uniform counts with an exactly representable 1/N.
    const ShotRecord uniform8 = record({2, 2, 2, 2});
    CHECK(tetraq::estimate_sum_p_squared(uniform8, Method::plugin) == 0.25);

    // Concentrated counts: plugin and unbiased both give exactly 1.
    const ShotRecord point = record({17, 0, 0, 0});
    CHECK(tetraq::estimate_sum_p_squared(point, Method::plugin) == 1.0);
    CHECK(tetraq::estimate_sum_p_squared(point,
                                         Method::unbiased_sum_of_squares) ==
          1.0);

    // counts (3,1,0,0): plugin (9+1)/16, unbiased (6+0)/(4*3).
    const ShotRecord mixed = record({3, 1, 0, 0});
    CHECK(tetraq::estimate_sum_p_squared(mixed, Method::plugin) ==
          doctest::Approx(0.625).epsilon(1e-15));
    CHECK(tetraq::estimate_sum_p_squared(mixed,
                                         Method::unbiased_sum_of_squares) ==
          doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(tetraq::estimate_sum_p_squared(
                        record({1, 0, 0, 0}), Method::unbiased_sum_of_squares),
                    std::invalid_argument);
    ShotRecord bad = record({5, 5, 0, 0});
    bad.shots = 11;
    CHECK_THROWS_AS(tetraq::estimate_sum_p_squared(bad, Method::plugin),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        tetraq::estimate_sum_p_squared(ShotRecord{}, Method::plugin),
        std::invalid_argument);
}

TEST_CASE("concurrence estimates propagate the delta-method error") {
    // Uniform counts sit exactly at C^2 = 1 where the gradient vanishes.
    bool clamped = true;
    const Estimate unit = tetraq::estimate_concurrence_squared(
        record({25, 25, 25, 25}), Method::plugin, &clamped);
    CHECK(unit.value == 1.0);
    CHECK(unit.std_error == 0.0);
    CHECK_FALSE(clamped);
    const Estimate unit_c =
        tetraq::estimate_concurrence(record({25, 25, 25, 25}), Method::plugin);
    CHECK(unit_c.value == 1.0);
    CHECK(unit_c.std_error == 0.0);

    // counts (30,25,25,20), N = 100: plugin sum 0.255, unbiased 2450/9900.
    const ShotRecord rec = record({30, 25, 25, 20});
    const Estimate plug =
        tetraq::estimate_concurrence_squared(rec, Method::plugin, &clamped);
    CHECK_FALSE(clamped);
    CHECK(plug.value == doctest::Approx(0.94).epsilon(1e-12));
    CHECK(plug.method == Method::plugin);
    const Estimate unb = tetraq::estimate_concurrence_squared(
        rec, Method::unbiased_sum_of_squares);
    CHECK(unb.value ==
          doctest::Approx(4.0 * (1.0 - 3.0 * 2450.0 / 9900.0)).epsilon(1e-12));

    // Both methods share the delta-method error at the empirical
    // frequencies: Var = (sum g^2 p - (sum g p)^2)/N with g = -24 p.
    CHECK(plug.std_error == doctest::Approx(0.084).epsilon(1e-12));
    CHECK(unb.std_error == plug.std_error);

    // SE(C) = SE(C^2) / (2 C) away from zero.
    const Estimate conc = tetraq::estimate_concurrence(rec, Method::plugin);
    CHECK(conc.value == doctest::Approx(std::sqrt(0.94)).epsilon(1e-14));
    CHECK(conc.std_error ==
          doctest::Approx(0.084 / (2.0 * std::sqrt(0.94))).epsilon(1e-12));

    // Clamped-to-zero concurrence falls back to sqrt(SE(C^2)).
    const ShotRecord sep = record({50, 30, 15, 5});
    const Estimate sep_sq =
        tetraq::estimate_concurrence_squared(sep, Method::plugin, &clamped);
    CHECK(sep_sq.value == 0.0);
    CHECK(clamped);
    const Estimate sep_c =
        tetraq::estimate_concurrence(sep, Method::plugin, &clamped);
    CHECK(sep_c.value == 0.0);
    CHECK(clamped);
    CHECK(sep_c.std_error ==
          doctest::Approx(std::sqrt(sep_sq.std_error)).epsilon(1e-14));
}

TEST_CASE("plugin bias is negative; the corrected estimator is centered") {
    // At a separable input (sum p^2 = 1/3) the raw plugin estimate of C^2
    // averages 4(1 - 3(1/3 + (1 - 1/3)/N)) = -8/N; clamping pushes the
    // reported value positive. The corrected estimator has zero mean.
    const std::uint64_t shots = 100;
    const int runs = 1000;
    std::vector<double> raw_plugin(runs), raw_unbiased(runs), clamped(runs);
    for (int r = 0; r < runs; ++r) {
        const ShotRecord rec =
            tetraq::sample_counts(kProductProbs, shots,
                                  static_cast<std::uint64_t>(1000 + r));
        raw_plugin[r] =
            4.0 * (1.0 -
                   3.0 * tetraq::estimate_sum_p_squared(rec, Method::plugin));
        raw_unbiased[r] =
            4.0 * (1.0 - 3.0 * tetraq::estimate_sum_p_squared(
                                   rec, Method::unbiased_sum_of_squares));
        clamped[r] =
            tetraq::estimate_concurrence_squared(rec, Method::plugin).value;
    }

    const double expected_bias = -8.0 / static_cast<double>(shots);
    const double se_plugin =
        sample_sd(raw_plugin) / std::sqrt(static_cast<double>(runs));
    CHECK(std::abs(mean(raw_plugin) - expected_bias) < 4.0 * se_plugin);
    CHECK(mean(raw_plugin) < -0.04);

    const double se_unbiased =
        sample_sd(raw_unbiased) / std::sqrt(static_cast<double>(runs));
    CHECK(std::abs(mean(raw_unbiased)) < 4.0 * se_unbiased);

    CHECK(mean(clamped) > 0.0);
}

TEST_CASE("corrected Bell-state estimate is centered at 1") {
    const int runs = 100;
    std::vector<double> values(runs);
    for (int r = 0; r < runs; ++r) {
        const ShotRecord rec = tetraq::sample_counts(
            kUniform, 10000, static_cast<std::uint64_t>(500 + r));
        values[r] = tetraq::estimate_concurrence_squared(
                        rec, Method::unbiased_sum_of_squares)
                        .value;
    }
    const double se = sample_sd(values) / std::sqrt(static_cast<double>(runs));
    CHECK(std::abs(mean(values) - 1.0) < 3.0 * se + 1e-12);
}

TEST_CASE("estimation error shrinks as one over root shots") {
    // Median |C_hat - C| across seeds, measured at three decades of N on a
    // partially entangled state; the log-log slope must sit near -1/2.
    const double alpha = kPi / 8.0;
    const ProbVector p = tetraq::ancilla_probabilities(tetraq::run_protocol(
        {std::cos(alpha), 0.0, 0.0, std::sin(alpha)}));
    const double true_c = std::sqrt(0.5);

    const std::array<std::uint64_t, 3> shot_grid{1000, 10000, 100000};
    const int runs = 60;
    std::array<double, 3> log_median{};
    for (std::size_t i = 0; i < shot_grid.size(); ++i) {
        std::vector<double> err(runs);
        for (int r = 0; r < runs; ++r) {
            const ShotRecord rec = tetraq::sample_counts(
                p, shot_grid[i], static_cast<std::uint64_t>(9000 + r));
            err[r] = std::abs(
                tetraq::estimate_concurrence(rec, Method::plugin).value -
                true_c);
        }
        std::nth_element(err.begin(), err.begin() + runs / 2, err.end());
        log_median[i] = std::log10(err[runs / 2]);
    }

    // Least squares over the three decades (x = log10 N is 3, 4, 5).
    const double xbar = 4.0;
    const double ybar = (log_median[0] + log_median[1] + log_median[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double x = 3.0 + static_cast<double>(i);
        num += (x - xbar) * (log_median[i] - ybar);
        den += (x - xbar) * (x - xbar);
    }
    const double slope = num / den;
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.3));
}

TEST_CASE("bloch estimates carry per-component errors") {
    // Exact quarters: the zero vector, with SE sqrt(3/N) per component.
    const BlochEstimate zero = tetraq::estimate_bloch(record({25, 25, 25, 25}));
    CHECK(std::abs(zero.value.sx) < 1e-14);
    CHECK(std::abs(zero.value.sy) < 1e-14);
    CHECK(std::abs(zero.value.sz) < 1e-14);
    CHECK(zero.std_error.sx == doctest::Approx(std::sqrt(0.03)).epsilon(1e-14));
    CHECK_FALSE(zero.outside_unit_ball);

    // Generic counts must agree with the exact linear inversion of the
    // empirical frequencies.
    const BlochEstimate got = tetraq::estimate_bloch(record({40, 20, 20, 20}));
    const tetraq::BlochVector want = tetraq::bloch_from_probabilities(
        ProbVector{0.4, 0.2, 0.2, 0.2});
    CHECK(got.value.sx == doctest::Approx(want.sx).epsilon(1e-14));
    CHECK(got.value.sy == doctest::Approx(want.sy).epsilon(1e-14));
    CHECK(got.value.sz == doctest::Approx(want.sz).epsilon(1e-14));
    CHECK(got.std_error.sx ==
          doctest::Approx(std::sqrt((3.0 - want.sx * want.sx) / 100.0))
              .epsilon(1e-14));
    CHECK_FALSE(got.outside_unit_ball);

    // All shots on one outcome put the raw vector far outside the ball;
    // it is reported as-is with the flag set.
    const BlochEstimate wild = tetraq::estimate_bloch(record({100, 0, 0, 0}));
    CHECK(wild.outside_unit_ball);
    CHECK(wild.value.norm2() == doctest::Approx(9.0).epsilon(1e-12));

    CHECK_THROWS_AS(tetraq::estimate_bloch(ShotRecord{}),
                    std::invalid_argument);
}

TEST_CASE("bootstrap errors agree with the delta method in scale") {
    const double alpha = kPi / 8.0;
    const ProbVector p = tetraq::ancilla_probabilities(tetraq::run_protocol(
        {std::cos(alpha), 0.0, 0.0, std::sin(alpha)}));
    const ShotRecord rec = tetraq::sample_counts(p, 10000, 31);

    const Estimate boot =
        tetraq::bootstrap_concurrence(rec, Method::plugin, true, 200, 77);
    const Estimate boot2 =
        tetraq::bootstrap_concurrence(rec, Method::plugin, true, 200, 77);
    CHECK(boot.value == boot2.value);
    CHECK(boot.std_error == boot2.std_error);

    // Point estimate is the non-resampled one.
    const Estimate delta =
        tetraq::estimate_concurrence_squared(rec, Method::plugin);
    CHECK(boot.value == delta.value);
    CHECK(boot.std_error > 0.5 * delta.std_error);
    CHECK(boot.std_error < 2.0 * delta.std_error);

    // Same contract for the unsquared value.
    const Estimate boot_c =
        tetraq::bootstrap_concurrence(rec, Method::plugin, false, 200, 78);
    const Estimate delta_c = tetraq::estimate_concurrence(rec, Method::plugin);
    CHECK(boot_c.value == delta_c.value);
    CHECK(boot_c.std_error > 0.5 * delta_c.std_error);
    CHECK(boot_c.std_error < 2.0 * delta_c.std_error);

    CHECK_THROWS_AS(
        tetraq::bootstrap_concurrence(rec, Method::plugin, true, 1, 1),
        std::invalid_argument);
}
