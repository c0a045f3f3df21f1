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

#ifndef STABKIT_STATE_HPP_
#define STABKIT_STATE_HPP_

// Dense statevector engine. Basis index bit i is qubit i, matching the bit
// order of WeylLabel halves.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/fwht.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/random.hpp"

namespace stabkit {

using Amplitude = std::complex<double>;

inline constexpr int kMaxStateQubits = 12;
inline constexpr int kMaxTableQubits = 8;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-10;

namespace detail {

/// i^e * z for e in 0..3.
inline Amplitude times_i_power(Amplitude z, int e) {
    switch (e & 3) {
        case 0:
            return z;
        case 1:
            return {-z.imag(), z.real()};
        case 2:
            return -z;
        default:
            return {z.imag(), -z.real()};
    }
}

inline void check_state_qubits(int n) {
    detail::require(n >= 1, "state: n must be at least 1");
    if (n > kMaxStateQubits) {
        throw CapExceeded("state: n = " + std::to_string(n) + " exceeds the engine cap of " +
                          std::to_string(kMaxStateQubits));
    }
}

inline void check_table_qubits(int n) {
    if (n > kMaxTableQubits) {
        throw CapExceeded("dyadic table: n = " + std::to_string(n) + " exceeds the table cap of " +
                          std::to_string(kMaxTableQubits));
    }
}

}  // namespace detail

/// Normalized pure state on n qubits. Immutable after construction.
class PureState {
   public:
    PureState(int n, std::vector<Amplitude> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
        detail::check_state_qubits(n);
        detail::require(amps_.size() == (std::size_t{1} << n), "PureState: amplitude count must be 2^n");
        double norm = 0;
        for (const auto &a : amps_) {
            norm += std::norm(a);
        }
        if (std::abs(norm - 1.0) > kNormTolerance) {
            throw InvalidArgument("PureState: squared norm " + std::to_string(norm) + " is not 1 within 1e-12");
        }
    }

    static PureState basis_state(int n, std::uint64_t index = 0) {
        detail::check_state_qubits(n);
        std::vector<Amplitude> amps(std::size_t{1} << n);
        detail::require(index < amps.size(), "PureState::basis_state: index out of range");
        amps[index] = 1.0;
        return PureState(n, std::move(amps));
    }

    int n() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    const Amplitude &operator[](std::size_t i) const { return amps_[i]; }

    /// |this> (x) |other>; this state's qubits stay the low-order qubits.
    PureState tensor(const PureState &other) const {
        detail::check_state_qubits(n_ + other.n_);
        std::vector<Amplitude> out(dim() * other.dim());
        for (std::size_t hi = 0; hi < other.dim(); ++hi) {
            for (std::size_t lo = 0; lo < dim(); ++lo) {
                out[lo | (hi << n_)] = amps_[lo] * other.amps_[hi];
            }
        }
        return PureState(n_ + other.n_, std::move(out));
    }

    double overlap_sq(const PureState &other) const {
        if (other.n_ != n_) {
            throw DimensionMismatch("PureState::overlap_sq: qubit counts differ");
        }
        Amplitude ip = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            ip += std::conj(amps_[i]) * other.amps_[i];
        }
        return std::norm(ip);
    }

   private:
    int n_;
    std::vector<Amplitude> amps_;
};

enum class TableKind { char_dist, weyl_dist, generic };

/// Real table indexed by packed WeylLabel, length 4^n.
class DyadicTable {
   public:
    DyadicTable(int n, TableKind kind, std::vector<double> values) : n_(n), kind_(kind), values_(std::move(values)) {
        detail::require(n >= 1, "DyadicTable: n must be at least 1");
        detail::check_table_qubits(n);
        detail::require(values_.size() == (std::size_t{1} << (2 * n)), "DyadicTable: length must be 4^n");
        if (kind_ == TableKind::generic) {
            return;
        }
        double total = 0;
        const double cap = std::ldexp(1.0, -n) + 1e-12;
        for (double v : values_) {
            detail::require(v >= 0, "DyadicTable: distribution has a negative entry");
            if (kind_ == TableKind::char_dist) {
                detail::require(v <= cap, "DyadicTable: characteristic entry exceeds 2^-n");
            }
            total += v;
        }
        detail::require(std::abs(total - 1.0) <= 1e-10, "DyadicTable: distribution does not sum to 1");
    }

    int n() const { return n_; }
    TableKind kind() const { return kind_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double> &values() const { return values_; }
    double operator[](std::uint64_t x) const { return values_[x]; }
    double at(const WeylLabel &x) const {
        if (x.n() != n_) {
            throw DimensionMismatch("DyadicTable::at: qubit counts differ");
        }
        return values_[x.bits()];
    }

   private:
    int n_;
    TableKind kind_;
    std::vector<double> values_;
};

/// W_x |psi> with W_x = i^{x1.x2} (x)_i X^{x1_i} Z^{x2_i}.
inline PureState apply_weyl(const PureState &state, const WeylLabel &x) {
    if (x.n() != state.n()) {
        throw DimensionMismatch("apply_weyl: qubit counts differ");
    }
    const int phase = std::popcount(x.x1() & x.x2());
    std::vector<Amplitude> out(state.dim());
    for (std::uint64_t j = 0; j < state.dim(); ++j) {
        const int e = phase + 2 * detail::parity(x.x2() & j);
        out[j ^ x.x1()] = detail::times_i_power(state[j], e);
    }
    return PureState(state.n(), std::move(out));
}

/// <psi|W_x|psi>, checked to be real.
inline double weyl_expectation(const PureState &state, const WeylLabel &x) {
    if (x.n() != state.n()) {
        throw DimensionMismatch("weyl_expectation: qubit counts differ");
    }
    const int phase = std::popcount(x.x1() & x.x2());
    Amplitude acc = 0;
    for (std::uint64_t j = 0; j < state.dim(); ++j) {
        const Amplitude term = std::conj(state[j ^ x.x1()]) * state[j];
        acc += detail::parity(x.x2() & j) ? -term : term;
    }
    acc = detail::times_i_power(acc, phase);
    if (std::abs(acc.imag()) > kHermiticityTolerance) {
        throw CertificateViolation("weyl_expectation: <W_x> has imaginary part " + std::to_string(acc.imag()));
    }
    return acc.real();
}

/// <psi|W_x|psi> for every label x, indexed by packed label. O(4^n n): for
/// each x1 the x2-dependence is a Walsh-Hadamard transform over the basis index.
inline std::vector<double> weyl_expectations(const PureState &state) {
    const int n = state.n();
    detail::check_table_qubits(n);
    const std::uint64_t dim = state.dim();
    std::vector<double> out(dim * dim);
    std::vector<Amplitude> f(dim);
    for (std::uint64_t x1 = 0; x1 < dim; ++x1) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            f[j] = std::conj(state[j ^ x1]) * state[j];
        }
        fwht(f);
        for (std::uint64_t x2 = 0; x2 < dim; ++x2) {
            const Amplitude v = detail::times_i_power(f[x2], std::popcount(x1 & x2));
            if (std::abs(v.imag()) > kHermiticityTolerance) {
                throw CertificateViolation("weyl_expectations: non-real expectation value");
            }
            out[x1 | (x2 << n)] = v.real();
        }
    }
    return out;
}

/// p(x) = 2^-n <psi|W_x|psi>^2.
inline DyadicTable char_distribution(const PureState &state) {
    auto values = weyl_expectations(state);
    const double scale = std::ldexp(1.0, -state.n());
    for (auto &v : values) {
        v = scale * v * v;
    }
    return DyadicTable(state.n(), TableKind::char_dist, std::move(values));
}

/// q(x) = sum_y p(y) p(x + y), by dyadic convolution.
inline DyadicTable weyl_distribution(const DyadicTable &p) {
    detail::require(p.kind() == TableKind::char_dist, "weyl_distribution: input must be a characteristic distribution");
    auto q = xor_self_convolution(p.values());
    for (auto &v : q) {
        // Rounding in the transform can leave tiny negatives where q is zero.
        if (v < 0 && v > -1e-12) {
            v = 0;
        }
    }
    return DyadicTable(p.n(), TableKind::weyl_dist, std::move(q));
}

/// gamma = sum_x q(x) 2^n p(x) from precomputed tables.
inline double gamma_from_tables(const DyadicTable &p, const DyadicTable &q) {
    const double scale = std::ldexp(1.0, p.n());
    double g = 0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        g += q[x] * scale * p[x];
    }
    return g;
}

inline double gamma_exact(const PureState &state) {
    const auto p = char_distribution(state);
    return gamma_from_tables(p, weyl_distribution(p));
}

/// |psi> (x) |0>^{extra}.
inline PureState pad_with_zeros(const PureState &state, int extra) {
    detail::require(extra >= 0, "pad_with_zeros: extra must be non-negative");
    if (extra == 0) {
        return state;
    }
    return state.tensor(PureState::basis_state(extra));
}

// ---------------------------------------------------------------------------
// Test-state generation.

enum class StateKind { stabilizer, haar, t_tensor, noisy_stabilizer };

inline StateKind parse_state_kind(std::string_view name) {
    if (name == "stabilizer") return StateKind::stabilizer;
    if (name == "haar") return StateKind::haar;
    if (name == "t_tensor") return StateKind::t_tensor;
    if (name == "noisy_stabilizer") return StateKind::noisy_stabilizer;
    throw InvalidArgument("unknown state kind '" + std::string(name) + "'");
}

inline std::string to_string(StateKind kind) {
    switch (kind) {
        case StateKind::stabilizer:
            return "stabilizer";
        case StateKind::haar:
            return "haar";
        case StateKind::t_tensor:
            return "t_tensor";
        default:
            return "noisy_stabilizer";
    }
}

struct StateSpec {
    StateKind kind = StateKind::stabilizer;
    int n = 1;
    std::uint64_t seed = 0;
    double noise = 0;  // read only for noisy_stabilizer
};

namespace detail {

inline void apply_h(std::vector<Amplitude> &a, int q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    const double s = std::numbers::sqrt2 / 2;
    for (std::uint64_t j = 0; j < a.size(); ++j) {
        if (j & bit) {
            continue;
        }
        const Amplitude a0 = a[j], a1 = a[j | bit];
        a[j] = s * (a0 + a1);
        a[j | bit] = s * (a0 - a1);
    }
}

inline void apply_s(std::vector<Amplitude> &a, int q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t j = 0; j < a.size(); ++j) {
        if (j & bit) {
            a[j] = times_i_power(a[j], 1);
        }
    }
}

inline void apply_cnot(std::vector<Amplitude> &a, int control, int target) {
    const std::uint64_t cb = std::uint64_t{1} << control, tb = std::uint64_t{1} << target;
    for (std::uint64_t j = 0; j < a.size(); ++j) {
        if ((j & cb) && !(j & tb)) {
            std::swap(a[j], a[j | tb]);
        }
    }
}

inline std::vector<Amplitude> random_clifford_amplitudes(int n, Rng &rng) {
    std::vector<Amplitude> a(std::size_t{1} << n);
    a[0] = 1;
    const int gates = 20 * n * n;
    const std::uint64_t gate_kinds = n >= 2 ? 3 : 2;
    for (int g = 0; g < gates; ++g) {
        const auto kind = uniform_index(rng, gate_kinds);
        const int q = static_cast<int>(uniform_index(rng, n));
        if (kind == 0) {
            apply_h(a, q);
        } else if (kind == 1) {
            apply_s(a, q);
        } else {
            int t = static_cast<int>(uniform_index(rng, n - 1));
            if (t >= q) {
                ++t;
            }
            apply_cnot(a, q, t);
        }
    }
    return a;
}

inline std::vector<Amplitude> gaussian_amplitudes(int n, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Amplitude> a(std::size_t{1} << n);
    double norm = 0;
    for (auto &v : a) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = {re, im};
        norm += std::norm(v);
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (auto &v : a) {
        v *= inv;
    }
    return a;
}

inline void renormalize(std::vector<Amplitude> &a) {
    double norm = 0;
    for (const auto &v : a) {
        norm += std::norm(v);
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (auto &v : a) {
        v *= inv;
    }
}

}  // namespace detail

/// |H> = (|0> + e^{i pi/4} |1>) / sqrt(2).
inline PureState h_magic_state() {
    const double s = std::numbers::sqrt2 / 2;
    return PureState(1, {Amplitude(s, 0), std::polar(s, std::numbers::pi / 4)});
}

/// Seeded test states:
///   stabilizer        random H/S/CNOT circuit of 20 n^2 gates on |0^n>;
///   haar              normalized complex Gaussian amplitudes;
///   t_tensor          |H>^{(x) n};
///   noisy_stabilizer  sqrt(1-noise)|S> + sqrt(noise)|g>, g Haar and orthogonal to S.
inline PureState generate_state(const StateSpec &spec) {
    detail::check_state_qubits(spec.n);
    const int n = spec.n;
    switch (spec.kind) {
        case StateKind::stabilizer: {
            Rng rng(spec.seed);
            auto a = detail::random_clifford_amplitudes(n, rng);
            detail::renormalize(a);
            return PureState(n, std::move(a));
        }
        case StateKind::haar: {
            Rng rng(spec.seed);
            return PureState(n, detail::gaussian_amplitudes(n, rng));
        }
        case StateKind::t_tensor: {
            PureState out = h_magic_state();
            for (int i = 1; i < n; ++i) {
                out = out.tensor(h_magic_state());
            }
            return out;
        }
        case StateKind::noisy_stabilizer: {
            detail::require(spec.noise >= 0 && spec.noise <= 1, "generate_state: noise must lie in [0, 1]");
            PureState base = generate_state({StateKind::stabilizer, n, spec.seed, 0});
            if (spec.noise == 0) {
                return base;
            }
            Rng rng(substream_seed(spec.seed, 1));
            auto g = detail::gaussian_amplitudes(n, rng);
            Amplitude ip = 0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                ip += std::conj(base[i]) * g[i];
            }
            for (std::size_t i = 0; i < g.size(); ++i) {
                g[i] -= ip * base[i];
            }
            detail::renormalize(g);
            const double keep = std::sqrt(1 - spec.noise);
            const double mix = std::sqrt(spec.noise);
            std::vector<Amplitude> out(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) {
                out[i] = keep * base[i] + mix * g[i];
            }
            detail::renormalize(out);
            return PureState(n, std::move(out));
        }
    }
    throw InvalidArgument("generate_state: invalid kind");
}

}  // namespace stabkit

#endif  // STABKIT_STATE_HPP_
