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

#ifndef STABKIT_FWHT_HPP_
#define STABKIT_FWHT_HPP_

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#include "stabkit/errors.hpp"

namespace stabkit {

/// In-place unnormalized Walsh-Hadamard transform:
///   out[s] = sum_x (-1)^{popcount(s & x)} in[x].
/// Applying it twice multiplies by the length.
template <typename T>
void fwht(std::span<T> values) {
    const std::size_t len = values.size();
    detail::require(std::has_single_bit(len), "fwht: length must be a power of two");
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                T x = values[j];
                T y = values[j + h];
                values[j] = x + y;
                values[j + h] = x - y;
            }
        }
    }
}

template <typename T>
void fwht(std::vector<T> &values) {
    fwht(std::span<T>(values));
}

/// XOR self-convolution out[x] = sum_y f[y] f[x ^ y], via two transforms.
/// Integer inputs stay exact as long as (sum f)^2 * len fits in T.
template <typename T>
std::vector<T> xor_self_convolution(std::vector<T> f) {
    fwht(f);
    for (auto &v : f) {
        v = v * v;
    }
    fwht(f);
    const T len = static_cast<T>(f.size());
    for (auto &v : f) {
        v /= len;
    }
    return f;
}

}  // namespace stabkit

#endif  // STABKIT_FWHT_HPP_
