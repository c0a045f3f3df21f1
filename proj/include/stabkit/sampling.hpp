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

#ifndef STABKIT_SAMPLING_HPP_
#define STABKIT_SAMPLING_HPP_

// Bell difference sampling and the tolerant stabilizer tester built on it.
//
// One round draws x, y independently from p_psi, sets a = x + y, and accepts
// with probability (1 + <W_a>^2) / 2. The accept rate is 1/2 + gamma/2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/random.hpp"
#include "stabkit/state.hpp"

namespace stabkit {

struct BellRoundOutcome {
    WeylLabel a;
    bool accept = false;
};

/// Caches p_psi and its CDF so rounds are O(n) each.
class BellSampler {
   public:
    explicit BellSampler(const PureState &state) : n_(state.n()), p_(char_distribution(state)) {
        cdf_.resize(p_.size());
        double acc = 0;
        for (std::size_t x = 0; x < p_.size(); ++x) {
            acc += p_[x];
            cdf_[x] = acc;
        }
    }

    int n() const { return n_; }
    const DyadicTable &characteristic() const { return p_; }

    std::uint64_t draw_label(Rng &rng) const {
        const double u = uniform01(rng) * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) {
            --it;
        }
        return static_cast<std::uint64_t>(it - cdf_.begin());
    }

    /// (1 + <W_a>^2) / 2, with <W_a>^2 = 2^n p(a).
    double accept_probability(std::uint64_t a) const {
        return std::min(1.0, 0.5 * (1.0 + std::ldexp(p_[a], n_)));
    }

    BellRoundOutcome round(Rng &rng) const {
        const std::uint64_t x = draw_label(rng);
        const std::uint64_t y = draw_label(rng);
        const std::uint64_t a = x ^ y;
        const bool accept = uniform01(rng) < accept_probability(a);
        return {WeylLabel(n_, a), accept};
    }

   private:
    int n_;
    DyadicTable p_;
    std::vector<double> cdf_;
};

inline BellRoundOutcome bell_round(const BellSampler &sampler, Rng &rng) {
    return sampler.round(rng);
}

struct GammaEstimate {
    double gamma_bar = 0;
    std::int64_t accepts = 0;
    std::int64_t rounds = 0;
};

/// gamma_bar = (1/m) sum_i (2 x_i - 1) over m rounds.
inline GammaEstimate estimate_gamma(const BellSampler &sampler, std::int64_t m, Rng &rng) {
    detail::require(m >= 1, "estimate_gamma: m must be at least 1");
    std::int64_t accepts = 0;
    for (std::int64_t i = 0; i < m; ++i) {
        accepts += sampler.round(rng).accept ? 1 : 0;
    }
    const double gamma_bar = static_cast<double>(2 * accepts - m) / static_cast<double>(m);
    return {gamma_bar, accepts, m};
}

inline GammaEstimate estimate_gamma(const PureState &state, std::int64_t m, Rng &rng) {
    detail::require(m >= 1, "estimate_gamma: m must be at least 1");
    return estimate_gamma(BellSampler(state), m, rng);
}

/// Thresholds and sample count of the tolerant tester.
///   D1 = eps1^6, D2 = (eps2 / C)^{1/112}, D = (D1 + D2) / 2,
///   m = ceil(72 ln(2/delta) / eps1^12).
struct TestPlan {
    double eps1 = 0;
    double eps2 = 0;
    double C = 1;
    double delta = 1.0 / 3;
    double D1 = 0;
    double D2 = 0;
    double D = 0;
    double alpha = 0;  // (D1 - D2) / 3, the deviation the test must resolve
    std::int64_t m = 0;
    bool half_gap = false;  // D2 <= D1 / 2, i.e. eps2 <= (C / 2^112) eps1^672
};

inline std::int64_t required_samples(double eps1, double delta) {
    return static_cast<std::int64_t>(std::ceil(72.0 * std::log(2.0 / delta) / std::pow(eps1, 12)));
}

inline TestPlan plan_test(double eps1, double eps2, double C, double delta) {
    detail::require(eps1 > 0 && eps1 <= 1, "plan_test: eps1 must lie in (0, 1]");
    detail::require(eps2 >= 0 && eps2 < 1, "plan_test: eps2 must lie in [0, 1)");
    detail::require(C > 0, "plan_test: C must be positive");
    detail::require(delta > 0 && delta < 1, "plan_test: delta must lie in (0, 1)");
    TestPlan plan;
    plan.eps1 = eps1;
    plan.eps2 = eps2;
    plan.C = C;
    plan.delta = delta;
    plan.D1 = std::pow(eps1, 6);
    plan.D2 = std::pow(eps2 / C, 1.0 / 112);
    if (plan.D2 >= plan.D1) {
        throw InvalidArgument("plan_test: gap violated, D2 = " + std::to_string(plan.D2) +
                              " >= D1 = " + std::to_string(plan.D1));
    }
    plan.D = (plan.D1 + plan.D2) / 2;
    plan.alpha = (plan.D1 - plan.D2) / 3;
    plan.m = required_samples(eps1, delta);
    plan.half_gap = plan.D2 <= plan.D1 / 2;
    return plan;
}

/// Same plan with the sample count overridden.
inline TestPlan with_sample_count(TestPlan plan, std::int64_t m) {
    detail::require(m >= 1, "with_sample_count: m must be at least 1");
    plan.m = m;
    return plan;
}

enum class Decision { Close, Far };

inline std::string to_string(Decision d) {
    return d == Decision::Close ? "Close" : "Far";
}

struct TestOutcome {
    Decision decision = Decision::Far;
    double gamma_bar = 0;
    std::int64_t m_used = 0;
};

/// Close iff gamma_bar >= D. Close means "F_S >= eps1", Far means "F_S <= eps2".
inline Decision decide(double gamma_bar, const TestPlan &plan) {
    return gamma_bar >= plan.D ? Decision::Close : Decision::Far;
}

inline TestOutcome run_tolerant_test(const BellSampler &sampler, const TestPlan &plan, Rng &rng) {
    const auto est = estimate_gamma(sampler, plan.m, rng);
    return {decide(est.gamma_bar, plan), est.gamma_bar, est.rounds};
}

inline TestOutcome run_tolerant_test(const PureState &state, const TestPlan &plan, Rng &rng) {
    return run_tolerant_test(BellSampler(state), plan, rng);
}

}  // namespace stabkit

#endif  // STABKIT_SAMPLING_HPP_
