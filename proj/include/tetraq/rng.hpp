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

#ifndef TETRAQ_RNG_HPP
#define TETRAQ_RNG_HPP

#include <cstdint>
#include <random>

namespace tetraq {

// One RNG type project-wide. The normative contract is the seed contract:
// the same seed always yields the same stream, on every platform. Streams
// for distinct seeds are treated as independent.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) built directly from the top 53 bits, bypassing
// std::uniform_real_distribution (whose output is not specified bit-exactly
// across standard libraries).
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace tetraq

#endif  // TETRAQ_RNG_HPP
