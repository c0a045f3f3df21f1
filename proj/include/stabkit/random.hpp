// Copyright 2026 The stabkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABKIT_RANDOM_HPP_
#define STABKIT_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace stabkit {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the index-th substream of a seeded run. Distinct indices give
/// statistically independent generators.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform double in [0, 1) with 53 random bits. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound).
inline std::uint64_t uniform_index(Rng &rng, std::uint64_t bound) {
    const auto v = static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(bound));
    return v < bound ? v : bound - 1;
}

}  // namespace stabkit

#endif  // STABKIT_RANDOM_HPP_
