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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stabkit/gf2.hpp"
#include "stabkit/graphs.hpp"
#include "stabkit/random.hpp"
#include "stabkit/theta.hpp"

namespace stabkit {
namespace {

constexpr double kTol = 1e-6;

SimpleGraph random_graph(int order, double density, Rng &rng) {
    SimpleGraph g(order);
    for (int i = 0; i < order; ++i) {
        for (int j = i + 1; j < order; ++j) {
            if (uniform01(rng) < density) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

void expect_feasible(const SimpleGraph &g, const ThetaResult &r, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.primal_matrix, Eigen::EigenvaluesOnly);
    EXPECT_GE(eig.eigenvalues()(0), -tol);
    EXPECT_LE(std::abs(r.primal_matrix.trace() - 1), tol);
    for (auto [i, j] : g.edges()) {
        EXPECT_LE(std::abs(r.primal_matrix(i, j)), tol);
    }
    EXPECT_LE(r.residuals.psd_violation, tol);
    EXPECT_LE(r.residuals.trace_gap, tol);
    EXPECT_LE(r.residuals.edge_violation, tol);
    EXPECT_NEAR(r.value, r.primal_matrix.sum(), 1e-9);
    EXPECT_GE(r.upper_bound, r.value - 1e-9);
    EXPECT_LE(r.upper_bound - r.value, tol);
    EXPECT_GE(r.value, 1 - 10 * tol);
    EXPECT_LE(r.value, g.order() + 10 * tol);
}

TEST(LovaszTheta, GoldenValues) {
    for (int n : {1, 2, 5, 16}) {
        const auto g = SimpleGraph::complete(n);
        const auto r = lovasz_theta(g, kTol);
        EXPECT_NEAR(r.value, 1.0, 10 * kTol);
        expect_feasible(g, r, kTol);
    }
    for (int m = 0; m <= 4; ++m) {
        const auto g = SimpleGraph::empty(1 << m);
        EXPECT_NEAR(lovasz_theta(g, kTol).value, std::ldexp(1.0, m), 10 * kTol);
    }
    EXPECT_NEAR(lovasz_theta(pauli_group_graph(1), kTol).value, 2.0, 10 * kTol);
    EXPECT_NEAR(lovasz_theta(pauli_group_graph(2), kTol).value, 4.0, 10 * kTol);
    const auto c5 = lovasz_theta(SimpleGraph::cycle(5), 1e-7);
    EXPECT_NEAR(c5.value, std::sqrt(5.0), 1e-6);
    expect_feasible(SimpleGraph::cycle(5), c5, 1e-7);
}

TEST(LovaszTheta, ComplementOfSymplecticGraph) {
    for (int k = 1; k <= 2; ++k) {
        EXPECT_NEAR(lovasz_theta(complement(symplectic_graph(k)), kTol).value, std::ldexp(1.0, k) - 1, 10 * kTol);
    }
}

TEST(LovaszTheta, OddCyclesClosedForm) {
    for (int n : {7, 9}) {
        const double want = n * std::cos(std::numbers::pi / n) / (1 + std::cos(std::numbers::pi / n));
        EXPECT_NEAR(lovasz_theta(SimpleGraph::cycle(n), kTol).value, want, 10 * kTol);
    }
}

TEST(LovaszTheta, ProductSumAndMonotonicity) {
    Rng rng(21);
    for (int t = 0; t < 6; ++t) {
        const auto a = random_graph(3 + t % 4, 0.5, rng);
        const auto b = random_graph(3 + (t / 2) % 4, 0.5, rng);
        const double ta = lovasz_theta(a, kTol).value;
        const double tb = lovasz_theta(b, kTol).value;
        EXPECT_NEAR(lovasz_theta(strong_product(a, b), kTol).value, ta * tb, 20 * kTol);
        EXPECT_NEAR(lovasz_theta(disjoint_union(a, b), kTol).value, ta + tb, 20 * kTol);
        auto denser = a;
        for (int e = 0; e < 3; ++e) {
            const int i = static_cast<int>(uniform_index(rng, a.order()));
            const int j = static_cast<int>(uniform_index(rng, a.order()));
            if (i != j) {
                denser.add_edge(i, j);
            }
        }
        EXPECT_GE(ta + 20 * kTol, lovasz_theta(denser, kTol).value);
    }
}

TEST(LovaszTheta, SubspaceBound) {
    // theta of the anticommutation graph of a subspace is at most 2^{k+m}.
    Rng rng(8);
    for (int t = 0; t < 8; ++t) {
        const int n = 2 + t % 2;
        std::vector<std::uint64_t> gens;
        for (int i = 0; i < 4; ++i) {
            gens.push_back(uniform_index(rng, std::uint64_t{1} << (2 * n)));
        }
        const auto v = GF2Subspace::span_bits(n, gens);
        std::vector<WeylLabel> labels;
        for (auto x : v.elements()) {
            labels.emplace_back(n, x);
        }
        const auto r = lovasz_theta(anticommutation_graph(labels), kTol);
        EXPECT_LE(r.value, std::ldexp(1.0, v.hyperbolic_rank() + v.radical_dim()) + 10 * kTol);
    }
}

TEST(LovaszTheta, RandomGraphsFeasible) {
    Rng rng(13);
    for (int t = 0; t < 5; ++t) {
        const auto g = random_graph(10 + 5 * t, 0.3 + 0.1 * t, rng);
        expect_feasible(g, lovasz_theta(g, kTol), kTol);
    }
}

TEST(LovaszTheta, Errors) {
    EXPECT_THROW(lovasz_theta(SimpleGraph(0)), InvalidArgument);
    EXPECT_THROW(lovasz_theta(SimpleGraph::empty(65)), CapExceeded);
    EXPECT_THROW(lovasz_theta(SimpleGraph::cycle(5), 1e-9), InvalidArgument);
    EXPECT_THROW(lovasz_theta(SimpleGraph::cycle(5), 1e-2), InvalidArgument);
    ThetaOptions opts;
    opts.max_iterations = 5;
    opts.tol = 1e-8;
    opts.interior_point_fallback = false;
    try {
        lovasz_theta(SimpleGraph::cycle(7), opts);
        FAIL() << "expected non-convergence";
    } catch (const ThetaNotConverged &e) {
        EXPECT_EQ(e.result.iterations, 5);
        EXPECT_GT(e.result.value, 0);
    }
}

}  // namespace
}  // namespace stabkit
