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

#ifndef STABKIT_UNCERTAINTY_HPP_
#define STABKIT_UNCERTAINTY_HPP_

// Generalized uncertainty relation for a set A of Weyl operators:
//   sum_i <A_i>^2 <= Psi0(A) <= theta(Gamma_A),
// where Psi0(A) = max over unit a of lambda_max(H_A(a)^2), H_A(a) = sum a_i A_i.
// Psi0 is only bounded from below here (multi-start ascent).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/graphs.hpp"
#include "stabkit/random.hpp"
#include "stabkit/state.hpp"
#include "stabkit/theta.hpp"

namespace stabkit {

inline constexpr int kMaxDenseQubits = 6;

struct HamiltonianSpec {
    std::vector<WeylLabel> labels;
    std::vector<double> coefficients;
};

namespace detail {

inline double norm2(std::span<const double> a) {
    double s = 0;
    for (double v : a) {
        s += v * v;
    }
    return std::sqrt(s);
}

/// Weyl operators are monomial: column j has its single entry in row j ^ x1.
class WeylFamily {
   public:
    explicit WeylFamily(std::span<const WeylLabel> labels) {
        detail::require(!labels.empty(), "Weyl family: label list is empty");
        n_ = labels.front().n();
        if (n_ > kMaxDenseQubits) {
            throw CapExceeded("dense Hamiltonian: n = " + std::to_string(n_) + " exceeds the cap of " +
                              std::to_string(kMaxDenseQubits));
        }
        dim_ = std::size_t{1} << n_;
        for (const auto &l : labels) {
            if (l.n() != n_) {
                throw DimensionMismatch("Weyl family: labels have different qubit counts");
            }
            x1_.push_back(l.x1());
            std::vector<std::complex<double>> col(dim_);
            const int phase = std::popcount(l.x1() & l.x2());
            for (std::uint64_t j = 0; j < dim_; ++j) {
                col[j] = times_i_power(1.0, phase + 2 * parity(l.x2() & j));
            }
            factors_.push_back(std::move(col));
        }
    }

    std::size_t size() const { return x1_.size(); }
    int n() const { return n_; }

    Eigen::MatrixXcd hamiltonian(std::span<const double> a) const {
        const auto d = static_cast<Eigen::Index>(dim_);
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::uint64_t j = 0; j < dim_; ++j) {
                h(static_cast<Eigen::Index>(j ^ x1_[i]), static_cast<Eigen::Index>(j)) += a[i] * factors_[i][j];
            }
        }
        return h;
    }

    /// Re <v|A_i|v>.
    double expectation(std::size_t i, const Eigen::VectorXcd &v) const {
        std::complex<double> acc = 0;
        for (std::uint64_t j = 0; j < dim_; ++j) {
            acc += std::conj(v(static_cast<Eigen::Index>(j ^ x1_[i]))) * factors_[i][j] * v(static_cast<Eigen::Index>(j));
        }
        return acc.real();
    }

   private:
    int n_ = 1;
    std::size_t dim_ = 2;
    std::vector<std::uint64_t> x1_;
    std::vector<std::vector<std::complex<double>>> factors_;
};

struct TopEigen {
    double value_sq = 0;  // lambda_max(H^2)
    double lambda = 0;    // eigenvalue of H with the largest magnitude
    Eigen::VectorXcd vector;
};

inline TopEigen top_eigen(const Eigen::MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    const auto &ev = eig.eigenvalues();
    const Eigen::Index last = ev.size() - 1;
    const bool use_max = ev(last) * ev(last) >= ev(0) * ev(0);
    TopEigen out;
    out.lambda = use_max ? ev(last) : ev(0);
    out.value_sq = out.lambda * out.lambda;
    out.vector = eig.eigenvectors().col(use_max ? last : 0);
    return out;
}

inline void check_spec(const HamiltonianSpec &spec) {
    detail::require(spec.labels.size() == spec.coefficients.size(), "HamiltonianSpec: label and coefficient counts differ");
    detail::require(!spec.labels.empty(), "HamiltonianSpec: empty label set");
    if (std::abs(norm2(spec.coefficients) - 1.0) > 1e-10) {
        throw InvalidArgument("HamiltonianSpec: coefficient vector must have unit 2-norm");
    }
    std::vector<WeylLabel> sorted = spec.labels;
    std::sort(sorted.begin(), sorted.end());
    detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "HamiltonianSpec: duplicate labels");
}

}  // namespace detail

/// ||H_A(a)^2|| = max(lambda_max(H)^2, lambda_min(H)^2), dense, n <= 6.
inline double hamiltonian_norm_sq(const HamiltonianSpec &spec) {
    detail::check_spec(spec);
    const detail::WeylFamily family(spec.labels);
    return detail::top_eigen(family.hamiltonian(spec.coefficients)).value_sq;
}

struct Psi0Options {
    int restarts = 64;
    double initial_step = 0.1;
    int max_steps = 500;
    double gradient_tol = 1e-9;
};

struct Psi0Bound {
    double value = 0;
    std::vector<double> argmax;
};

namespace detail {

/// Projected gradient ascent of lambda_max(H(a)^2) on the unit sphere from `a`.
inline Psi0Bound ascend(const WeylFamily &family, std::vector<double> a, const Psi0Options &opts) {
    const std::size_t m = family.size();
    const double na = norm2(a);
    for (auto &v : a) {
        v /= na;
    }
    TopEigen cur = top_eigen(family.hamiltonian(a));
    std::vector<double> grad(m), trial(m);
    for (int step_count = 0; step_count < opts.max_steps; ++step_count) {
        double radial = 0;
        for (std::size_t i = 0; i < m; ++i) {
            grad[i] = 2 * cur.lambda * family.expectation(i, cur.vector);
            radial += grad[i] * a[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            grad[i] -= radial * a[i];
        }
        const double gnorm = norm2(grad);
        if (gnorm < opts.gradient_tol) {
            break;
        }
        double step = opts.initial_step;
        bool moved = false;
        while (step > 1e-14) {
            for (std::size_t i = 0; i < m; ++i) {
                trial[i] = a[i] + step * grad[i];
            }
            const double nt = norm2(trial);
            for (auto &v : trial) {
                v /= nt;
            }
            TopEigen next = top_eigen(family.hamiltonian(trial));
            if (next.value_sq >= cur.value_sq + 1e-4 * step * gnorm * gnorm) {
                a = trial;
                cur = std::move(next);
                moved = true;
                break;
            }
            step /= 2;
        }
        if (!moved) {
            break;
        }
    }
    return {cur.value_sq, a};
}

}  // namespace detail

/// Certified lower bound on Psi0(A) from multi-start ascent. Explicit starting
/// points in `starts` are tried first; the remaining restarts draw Gaussian
/// directions from rng.
inline Psi0Bound psi0_lower_bound(std::span<const WeylLabel> labels, const Psi0Options &opts, Rng &rng,
                                  std::span<const std::vector<double>> starts = {}) {
    detail::require(opts.restarts >= 1, "psi0_lower_bound: restarts must be at least 1");
    const detail::WeylFamily family(labels);
    const std::size_t m = family.size();
    Psi0Bound best{-1, {}};
    auto consider = [&](std::vector<double> start) {
        auto found = detail::ascend(family, std::move(start), opts);
        if (found.value > best.value) {
            best = std::move(found);
        }
    };
    for (const auto &s : starts) {
        detail::require(s.size() == m, "psi0_lower_bound: start vector has the wrong length");
        if (detail::norm2(s) > 0) {
            consider(s);
        }
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<double> start(m);
        double nrm = 0;
        while (nrm == 0) {
            for (auto &v : start) {
                v = normal(rng);
            }
            nrm = detail::norm2(start);
        }
        consider(std::move(start));
    }
    return best;
}

inline Psi0Bound psi0_lower_bound(std::span<const WeylLabel> labels, int restarts, Rng &rng) {
    Psi0Options opts;
    opts.restarts = restarts;
    return psi0_lower_bound(labels, opts, rng);
}

struct UncertaintyCertificate {
    double lhs = 0;            // sum_i <psi|A_i|psi>^2
    std::vector<double> witness;  // w_i = <psi|A_i|psi>
    double witness_norm_sq = 0;   // ||H_A(w/|w|)^2||, 0 when w = 0
    double psi0_lb = 0;
    double theta_value = 0;  // certified lower end of the theta bracket
    double theta_ub = 0;     // dual upper bound on theta
};

/// Evaluates the chain sum <A_i>^2 <= Psi0(A) <= theta(Gamma_A) for one state
/// and checks every link. Throws CertificateViolation if any link fails.
inline UncertaintyCertificate uncertainty_certificate(const PureState &state, std::span<const WeylLabel> labels,
                                                      double theta_tol, const Psi0Options &opts, Rng &rng) {
    if (state.n() > kMaxDenseQubits) {
        throw CapExceeded("uncertainty_certificate: n exceeds the dense cap of 6");
    }
    if (labels.size() > static_cast<std::size_t>(kMaxThetaOrder)) {
        throw CapExceeded("uncertainty_certificate: more than 64 labels");
    }
    const SimpleGraph graph = anticommutation_graph(labels);  // also rejects duplicates
    UncertaintyCertificate cert;
    for (const auto &l : labels) {
        if (l.n() != state.n()) {
            throw DimensionMismatch("uncertainty_certificate: label and state qubit counts differ");
        }
        cert.witness.push_back(weyl_expectation(state, l));
    }
    for (double w : cert.witness) {
        cert.lhs += w * w;
    }

    std::vector<std::vector<double>> starts;
    const double wnorm = std::sqrt(cert.lhs);
    if (wnorm > 0) {
        std::vector<double> unit = cert.witness;
        for (auto &v : unit) {
            v /= wnorm;
        }
        const detail::WeylFamily family(labels);
        cert.witness_norm_sq = detail::top_eigen(family.hamiltonian(unit)).value_sq;
        if (cert.lhs > wnorm * std::sqrt(cert.witness_norm_sq) + 1e-9) {
            throw CertificateViolation("uncertainty_certificate: |w|^2 exceeds |w| ||H(w/|w|)||");
        }
        starts.push_back(std::move(unit));
    }
    const auto psi0 = psi0_lower_bound(labels, opts, rng, starts);
    cert.psi0_lb = std::max(psi0.value, cert.witness_norm_sq);
    const auto theta = lovasz_theta(graph, theta_tol);
    cert.theta_value = theta.value;
    cert.theta_ub = theta.upper_bound;

    if (cert.lhs > cert.psi0_lb + 1e-8) {
        throw CertificateViolation("uncertainty_certificate: lhs " + std::to_string(cert.lhs) +
                                   " exceeds the Psi0 lower bound " + std::to_string(cert.psi0_lb));
    }
    if (cert.lhs > cert.theta_ub + theta_tol) {
        throw CertificateViolation("uncertainty_certificate: lhs " + std::to_string(cert.lhs) + " exceeds theta " +
                                   std::to_string(cert.theta_ub));
    }
    if (cert.psi0_lb > cert.theta_ub + 10 * theta_tol) {
        throw CertificateViolation("uncertainty_certificate: Psi0 lower bound " + std::to_string(cert.psi0_lb) +
                                   " exceeds theta " + std::to_string(cert.theta_ub));
    }
    return cert;
}

}  // namespace stabkit

#endif  // STABKIT_UNCERTAINTY_HPP_
