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

#ifndef TETRAQ_TOLERANCES_HPP
#define TETRAQ_TOLERANCES_HPP

#include <cstddef>

namespace tetraq {

// Every numerical gate in the library reads from this one record so the
// whole suite is tuned by a single knob.
struct Tolerances {
    // Structural checks: unitarity, Hermiticity, cross-module equality.
    double structural = 1e-10;
    // State normalization and probability-sum checks.
    double normalization = 1e-12;
    // Probability sums coming from sampled (noisy) data.
    double prob_sum_loose = 1e-9;
    // Smallest eigenvalue a density matrix may report before being rejected.
    double psd_floor = -1e-10;
    // Phonon/truncation leakage above this flags a pulse run invalid.
    double leakage = 1e-10;
    // Radicand 4(1 - 3 sum P^2) below this is numerical noise: the square
    // root would turn O(1e-16) rounding into a spurious ~1e-8 concurrence,
    // so such values clamp to zero exactly like negative ones.
    double c_squared_floor = 1e-13;
    // Kronecker products refuse to grow past this total dimension.
    std::size_t max_total_dim = 4096;
};

inline constexpr Tolerances kTol{};

}  // namespace tetraq

#endif  // TETRAQ_TOLERANCES_HPP
