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

#ifndef STABKIT_ORACLE_HPP_
#define STABKIT_ORACLE_HPP_

// Exact stabilizer fidelity by exhaustive search over Lagrangian subspaces.
//
// For a Lagrangian V with reduced basis b_1..b_n, write x_c = sum_i c_i b_i and
// let sigma0(c) = +-1 be the sign with prod_{i: c_i=1} W_{b_i} = sigma0(c) W_{x_c}.
// The 2^n stabilizer states whose stabilizer group is +-V are labelled by a
// sign vector s in F_2^n and have projectors
//   P_s = 2^-n sum_c (-1)^{s.c} sigma0(c) W_{x_c}.
// Their fidelities with |psi> form one Walsh-Hadamard transform over c.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <utility>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/fwht.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/state.hpp"

namespace stabkit {

inline constexpr int kMaxOracleQubits = 4;

namespace detail {

inline void require_lagrangian(const GF2Subspace &v, int n, const char *who) {
    if (v.n() != n) {
        throw DimensionMismatch(std::string(who) + ": subspace and state have different qubit counts");
    }
    if (!v.is_lagrangian()) {
        throw InvalidArgument(std::string(who) + ": subspace is not Lagrangian");
    }
}

/// sigma0(c) <W_{x_c}> indexed by the coefficient vector c.
inline std::vector<double> signed_expectations_on(const GF2Subspace &v, const std::vector<double> &expectations) {
    const int n = v.n();
    const auto &rows = v.basis_bits();
    std::vector<double> f(v.size());
    std::uint64_t x = 0;
    int phase = 0;
    f[0] = expectations[0];
    for (std::uint64_t i = 1; i < v.size(); ++i) {
        const int flip = std::countr_zero(i);
        phase = (phase + weyl_product_phase_bits(n, x, rows[flip])) & 3;
        x ^= rows[flip];
        const std::uint64_t c = i ^ (i >> 1);
        if (phase & 1) {
            throw CertificateViolation("stabilizer oracle: commuting Weyl product has imaginary phase");
        }
        f[c] = phase == 0 ? expectations[x] : -expectations[x];
    }
    return f;
}

inline const std::vector<GF2Subspace> &cached_lagrangians(int n) {
    static std::array<std::once_flag, kMaxOracleQubits + 1> once;
    static std::array<std::vector<GF2Subspace>, kMaxOracleQubits + 1> cache;
    std::call_once(once[n], [n] { cache[n] = enumerate_lagrangians(n); });
    return cache[n];
}

}  // namespace detail

/// Fidelity with each of the 2^n stabilizer states of group +-V, indexed by
/// the sign vector s (bit i flips the sign of basis row i).
inline std::vector<double> character_fidelities(const std::vector<double> &expectations, const GF2Subspace &v) {
    auto f = detail::signed_expectations_on(v, expectations);
    fwht(f);
    const double scale = std::ldexp(1.0, -v.n());
    for (auto &val : f) {
        val *= scale;
    }
    return f;
}

inline std::vector<double> character_fidelities(const PureState &state, const GF2Subspace &v) {
    detail::require_lagrangian(v, state.n(), "character_fidelities");
    return character_fidelities(weyl_expectations(state), v);
}

struct CharacterFidelity {
    double fidelity = 0;
    std::uint64_t character = 0;
};

inline CharacterFidelity best_of(const std::vector<double> &fidelities) {
    CharacterFidelity best{fidelities[0], 0};
    for (std::uint64_t s = 1; s < fidelities.size(); ++s) {
        if (fidelities[s] > best.fidelity) {
            best = {fidelities[s], s};
        }
    }
    return best;
}

/// Best overlap among the stabilizer states whose group is +-V.
inline CharacterFidelity best_character_fidelity(const PureState &state, const GF2Subspace &v) {
    return best_of(character_fidelities(state, v));
}

/// sum_{x in V} p(x), a lower bound on F_S.
inline double lagrangian_mass(const DyadicTable &p, const GF2Subspace &v) {
    detail::require(p.kind() == TableKind::char_dist, "lagrangian_mass: table must be a characteristic distribution");
    detail::require_lagrangian(v, p.n(), "lagrangian_mass");
    double mass = 0;
    v.for_each_element([&](std::uint64_t x, std::uint64_t) { mass += p[x]; });
    return mass;
}

inline double lagrangian_mass(const PureState &state, const GF2Subspace &v) {
    detail::require_lagrangian(v, state.n(), "lagrangian_mass");
    return lagrangian_mass(char_distribution(state), v);
}

struct FidelityReport {
    double f_s = 0;
    GF2Subspace argmax_lagrangian;
    std::uint64_t argmax_character = 0;
    std::vector<std::pair<GF2Subspace, double>> lagrangian_masses;
};

/// Exact F_S = max over all stabilizer states, for n <= 4. Ties resolve to the
/// lexicographically first Lagrangian, then the smallest sign vector.
inline FidelityReport stabilizer_fidelity_exact(const PureState &state) {
    if (state.n() > kMaxOracleQubits) {
        throw CapExceeded("stabilizer_fidelity_exact: n = " + std::to_string(state.n()) +
                          " exceeds the oracle cap of " + std::to_string(kMaxOracleQubits));
    }
    const auto expectations = weyl_expectations(state);
    const double scale = std::ldexp(1.0, -state.n());
    FidelityReport report;
    report.f_s = -1;
    const auto &lagrangians = detail::cached_lagrangians(state.n());
    report.lagrangian_masses.reserve(lagrangians.size());
    for (const auto &v : lagrangians) {
        const auto best = best_of(character_fidelities(expectations, v));
        if (best.fidelity > report.f_s) {
            report.f_s = best.fidelity;
            report.argmax_lagrangian = v;
            report.argmax_character = best.character;
        }
        double mass = 0;
        v.for_each_element([&](std::uint64_t x, std::uint64_t) { mass += scale * expectations[x] * expectations[x]; });
        report.lagrangian_masses.emplace_back(v, mass);
    }
    return report;
}

/// Dense Tr[(2^-n sum_{x in V} W_x psi W_x^dagger)^2].
inline double twirl_purity_dense(const PureState &state, const GF2Subspace &v) {
    detail::require_lagrangian(v, state.n(), "twirl_purity");
    if (state.n() > kMaxOracleQubits) {
        throw CapExceeded("twirl_purity: n exceeds the dense cap of 4");
    }
    const auto dim = static_cast<Eigen::Index>(state.dim());
    Eigen::MatrixXcd twirled = Eigen::MatrixXcd::Zero(dim, dim);
    v.for_each_element([&](std::uint64_t x, std::uint64_t) {
        const PureState moved = apply_weyl(state, WeylLabel(state.n(), x));
        Eigen::VectorXcd phi(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            phi(i) = moved[static_cast<std::size_t>(i)];
        }
        twirled += phi * phi.adjoint();
    });
    twirled *= std::ldexp(1.0, -state.n());
    return (twirled * twirled).trace().real();
}

/// Purity of the V-twirled state. Computed densely and as sum_{y in V} p(y);
/// the two must agree within 1e-9.
inline double twirl_purity(const PureState &state, const GF2Subspace &v) {
    const double dense = twirl_purity_dense(state, v);
    double mass = 0;
    const double scale = std::ldexp(1.0, -state.n());
    v.for_each_element([&](std::uint64_t x, std::uint64_t) {
        const double e = weyl_expectation(state, WeylLabel(state.n(), x));
        mass += scale * e * e;
    });
    if (std::abs(dense - mass) > 1e-9) {
        throw CertificateViolation("twirl_purity: dense purity " + std::to_string(dense) +
                                   " disagrees with Lagrangian mass " + std::to_string(mass));
    }
    return mass;
}

}  // namespace stabkit

#endif  // STABKIT_ORACLE_HPP_
