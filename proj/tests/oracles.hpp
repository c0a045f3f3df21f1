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

#ifndef STABKIT_TESTS_ORACLES_HPP_
#define STABKIT_TESTS_ORACLES_HPP_

// Slow, independent reference implementations used to cross-check the
// transform-based and monomial code paths.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <complex>
#include <functional>
#include <cstdint>
#include <vector>

#include "stabkit/additive.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/state.hpp"

namespace stabkit::oracle_ref {

using Cd = std::complex<double>;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// W_x as an explicit Kronecker product; qubit 0 is the least significant
/// index bit, so it is the rightmost factor.
inline Eigen::MatrixXcd weyl_matrix(const WeylLabel &x) {
    Eigen::Matrix2cd X, Z, I;
    X << 0, 1, 1, 0;
    Z << 1, 0, 0, -1;
    I.setIdentity();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = x.n() - 1; q >= 0; --q) {
        Eigen::Matrix2cd f = I;
        if ((x.x1() >> q) & 1) {
            f = f * X;
        }
        if ((x.x2() >> q) & 1) {
            f = f * Z;
        }
        m = kron(m, f);
    }
    const int dot = std::popcount(x.x1() & x.x2());
    Cd phase = 1;
    for (int k = 0; k < dot; ++k) {
        phase *= Cd(0, 1);
    }
    return phase * m;
}

inline Eigen::VectorXcd as_vector(const PureState &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

inline double dense_expectation(const PureState &s, const WeylLabel &x) {
    const auto v = as_vector(s);
    return (v.adjoint() * weyl_matrix(x) * v)(0, 0).real();
}

/// q(x) = sum_y p(y) p(x + y) by the double loop.
inline std::vector<double> naive_weyl_distribution(const std::vector<double> &p) {
    std::vector<double> q(p.size(), 0.0);
    for (std::size_t x = 0; x < p.size(); ++x) {
        for (std::size_t y = 0; y < p.size(); ++y) {
            q[x] += p[y] * p[x ^ y];
        }
    }
    return q;
}

/// r(x) = |{(a, b) in S^2 : a + b = x}| by the double loop over members.
inline std::vector<std::int64_t> naive_representation_counts(const GF2Set &s) {
    std::vector<std::int64_t> r(s.universe(), 0);
    const auto m = s.members();
    for (auto a : m) {
        for (auto b : m) {
            r[a ^ b]++;
        }
    }
    return r;
}

/// All elements of the span, by brute-force closure.
inline std::vector<std::uint64_t> span_elements(const std::vector<std::uint64_t> &gens) {
    std::vector<std::uint64_t> out = {0};
    for (auto g : gens) {
        const std::size_t sz = out.size();
        bool fresh = true;
        for (std::size_t i = 0; i < sz; ++i) {
            if (out[i] == g) {
                fresh = false;
            }
        }
        if (!fresh) {
            continue;
        }
        for (std::size_t i = 0; i < sz; ++i) {
            const auto v = out[i] ^ g;
            bool seen = false;
            for (auto w : out) {
                seen = seen || w == v;
            }
            if (!seen) {
                out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline int form(int n, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    return std::popcount(((a & mask) & (b >> n)) ^ ((a >> n) & (b & mask))) & 1;
}

/// Rank over F_2 of the Gram matrix of the form on the given vectors, by
/// plain Gaussian elimination on a dense 0/1 matrix.
inline int gram_rank(int n, const std::vector<std::uint64_t> &vecs) {
    const std::size_t d = vecs.size();
    std::vector<std::vector<int>> g(d, std::vector<int>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            g[i][j] = form(n, vecs[i], vecs[j]);
        }
    }
    int rank = 0;
    for (std::size_t col = 0; col < d && static_cast<std::size_t>(rank) < d; ++col) {
        std::size_t piv = rank;
        while (piv < d && !g[piv][col]) {
            ++piv;
        }
        if (piv == d) {
            continue;
        }
        std::swap(g[piv], g[rank]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r != static_cast<std::size_t>(rank) && g[r][col]) {
                for (std::size_t c = 0; c < d; ++c) {
                    g[r][c] ^= g[rank][c];
                }
            }
        }
        ++rank;
    }
    return rank;
}

/// Number of Lagrangian subspaces of F_2^{2n}: distinct element sets of
/// isotropic spans of dimension n, found by brute force over generator tuples.
inline std::size_t brute_force_lagrangian_count(int n) {
    const std::uint64_t universe = std::uint64_t{1} << (2 * n);
    std::vector<std::vector<std::uint64_t>> found;
    std::vector<std::uint64_t> gens;
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t start) {
        if (static_cast<int>(gens.size()) == n) {
            auto el = span_elements(gens);
            if (el.size() == (std::uint64_t{1} << n)) {
                found.push_back(el);
            }
            return;
        }
        for (std::uint64_t x = start; x < universe; ++x) {
            bool ok = true;
            for (auto g : gens) {
                ok = ok && form(n, g, x) == 0;
            }
            if (ok) {
                gens.push_back(x);
                rec(x + 1);
                gens.pop_back();
            }
        }
    };
    rec(1);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found.size();
}

}  // namespace stabkit::oracle_ref

#endif  // STABKIT_TESTS_ORACLES_HPP_
