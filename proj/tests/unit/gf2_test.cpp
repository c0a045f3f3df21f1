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

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/random.hpp"

namespace stabkit {
namespace {

WeylLabel L(const char *s) { return WeylLabel::parse(s); }

GF2Subspace span_of(std::initializer_list<const char *> gens) {
    std::vector<WeylLabel> v;
    for (auto g : gens) {
        v.push_back(L(g));
    }
    return GF2Subspace::span(v);
}

TEST(WeylLabel, ParseAndPrintRoundTrip) {
    const auto x = L("1001");
    EXPECT_EQ(x.n(), 2);
    EXPECT_EQ(x.x1(), 1u);
    EXPECT_EQ(x.x2(), 2u);
    EXPECT_EQ(x.str(), "1001");
    EXPECT_EQ(WeylLabel::from_halves(2, 1, 2), x);
    EXPECT_TRUE(L("0000").is_identity());
}

TEST(WeylLabel, RejectsMalformedInput) {
    EXPECT_THROW(L("101"), InvalidArgument);
    EXPECT_THROW(L("10a1"), InvalidArgument);
    EXPECT_THROW(WeylLabel(1, 4), InvalidArgument);
    EXPECT_THROW(WeylLabel(0, 0), InvalidArgument);
    EXPECT_THROW(L("10") + L("1000"), DimensionMismatch);
}

TEST(SymplecticForm, Examples) {
    EXPECT_EQ(symplectic_form(L("10"), L("10")), 0);
    EXPECT_EQ(symplectic_form(L("10"), L("01")), 1);
    EXPECT_EQ(symplectic_form(L("1001"), L("0110")), 0);
    EXPECT_THROW(symplectic_form(L("10"), L("1000")), DimensionMismatch);
}

TEST(SymplecticForm, BilinearAndAlternating) {
    Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        const int n = 1 + static_cast<int>(uniform_index(rng, 6));
        const std::uint64_t u = std::uint64_t{1} << (2 * n);
        const WeylLabel x(n, uniform_index(rng, u)), y(n, uniform_index(rng, u)), z(n, uniform_index(rng, u));
        EXPECT_EQ(symplectic_form(x + y, z), symplectic_form(x, z) ^ symplectic_form(y, z));
        EXPECT_EQ(symplectic_form(x, x), 0);
        EXPECT_EQ(symplectic_form(x, y), symplectic_form(y, x));
        EXPECT_EQ(symplectic_form(x, y), oracle_ref::form(n, x.bits(), y.bits()));
    }
}

TEST(SpanAndClassify, Examples) {
    auto z = span_and_classify(std::vector{L("01")});
    EXPECT_EQ(z.dim(), 1);
    EXPECT_TRUE(z.is_isotropic());
    EXPECT_TRUE(z.is_lagrangian());

    auto full = span_and_classify(std::vector{L("10"), L("01")});
    EXPECT_EQ(full.dim(), 2);
    EXPECT_FALSE(full.is_isotropic());
    EXPECT_FALSE(full.is_lagrangian());

    auto xx = span_and_classify(std::vector{L("1000"), L("0100")});
    EXPECT_EQ(xx.dim(), 2);
    EXPECT_TRUE(xx.is_isotropic());
    EXPECT_TRUE(xx.is_lagrangian());

    auto zero = span_and_classify(std::vector{L("0000"), L("0000")});
    EXPECT_EQ(zero.dim(), 0);
    EXPECT_TRUE(zero.is_isotropic());
    EXPECT_FALSE(zero.is_lagrangian());
    EXPECT_THROW(GF2Subspace::span(std::vector<WeylLabel>{}), InvalidArgument);
}

TEST(GF2Subspace, ElementsMatchBruteForceSpan) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(uniform_index(rng, 4));
        std::vector<std::uint64_t> gens;
        const int g = static_cast<int>(uniform_index(rng, 2 * n + 2));
        for (int i = 0; i < g; ++i) {
            gens.push_back(uniform_index(rng, std::uint64_t{1} << (2 * n)));
        }
        const auto v = GF2Subspace::span_bits(n, gens);
        auto el = v.elements();
        std::sort(el.begin(), el.end());
        EXPECT_EQ(el, oracle_ref::span_elements(gens));
        EXPECT_EQ(el.size(), v.size());
        // reduce gives the smallest element of each coset
        for (int s = 0; s < 10; ++s) {
            const auto x = uniform_index(rng, std::uint64_t{1} << (2 * n));
            std::uint64_t best = x;
            for (auto e : el) {
                best = std::min(best, x ^ e);
            }
            EXPECT_EQ(v.reduce(x), best);
        }
        // isotropy and hyperbolic rank agree with the dense Gram matrix
        const int rank = oracle_ref::gram_rank(n, v.basis_bits());
        EXPECT_EQ(v.hyperbolic_rank() * 2, rank);
        EXPECT_EQ(v.is_isotropic(), rank == 0);
    }
}

TEST(GramSchmidt, Examples) {
    auto d1 = symplectic_gram_schmidt(span_of({"10", "01"}));
    EXPECT_EQ(d1.k(), 1);
    EXPECT_EQ(d1.m(), 0);
    auto d2 = symplectic_gram_schmidt(span_of({"0010", "0001"}));
    EXPECT_EQ(d2.k(), 0);
    EXPECT_EQ(d2.m(), 2);
    auto d3 = symplectic_gram_schmidt(span_of({"1000", "0010", "0100"}));
    EXPECT_EQ(d3.k(), 1);
    EXPECT_EQ(d3.m(), 1);
}

TEST(GramSchmidt, PairsAreHyperbolicAndSpanInput) {
    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + static_cast<int>(uniform_index(rng, 5));
        std::vector<std::uint64_t> gens;
        for (int i = 0; i < 2 * n; ++i) {
            if (uniform01(rng) < 0.6) {
                gens.push_back(uniform_index(rng, std::uint64_t{1} << (2 * n)));
            }
        }
        const auto v = GF2Subspace::span_bits(n, gens);
        const auto d = symplectic_gram_schmidt(v);
        std::vector<WeylLabel> all;
        for (auto &[z, x] : d.hyperbolic_pairs) {
            all.push_back(z);
            all.push_back(x);
        }
        for (auto &r : d.isotropic_part) {
            all.push_back(r);
        }
        ASSERT_EQ(2 * d.k() + d.m(), v.dim());
        EXPECT_LE(d.k() + d.m(), n);
        EXPECT_EQ(d.k(), v.hyperbolic_rank());
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = 0; j < all.size(); ++j) {
                const bool partners = i / 2 == j / 2 && i != j && i < 2 * static_cast<std::size_t>(d.k()) &&
                                      j < 2 * static_cast<std::size_t>(d.k());
                EXPECT_EQ(symplectic_form(all[i], all[j]), partners ? 1 : 0);
            }
        }
        if (!all.empty()) {
            EXPECT_EQ(GF2Subspace::span(all), v);
        }
    }
}

TEST(ExtendToLagrangian, Examples) {
    const auto a = extend_to_lagrangian(GF2Subspace(1));
    EXPECT_TRUE(a.is_lagrangian());
    EXPECT_EQ(a, span_of({"10"}));  // first label in packed order

    const auto b = extend_to_lagrangian(span_of({"0010"}));
    EXPECT_TRUE(b.is_lagrangian());
    EXPECT_TRUE(b.contains(L("0010")));

    const auto c = extend_to_lagrangian(span_of({"11"}));
    EXPECT_EQ(c, span_of({"11"}));

    EXPECT_THROW(extend_to_lagrangian(span_of({"10", "01"})), InvalidArgument);
}

TEST(ExtendToLagrangian, AlwaysLagrangianAndContainsInput) {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(uniform_index(rng, 5));
        std::vector<std::uint64_t> gens;
        for (int i = 0; i < n; ++i) {
            const auto x = uniform_index(rng, std::uint64_t{1} << (2 * n));
            bool ok = true;
            for (auto g : gens) {
                ok = ok && oracle_ref::form(n, g, x) == 0;
            }
            if (ok) {
                gens.push_back(x);
            }
        }
        const auto v0 = GF2Subspace::span_bits(n, gens);
        const auto v = extend_to_lagrangian(v0);
        EXPECT_TRUE(v.is_lagrangian());
        EXPECT_EQ(v.dim(), n);
        EXPECT_TRUE(v0.is_subspace_of(v));
    }
}

void expect_valid_cover(const GF2Subspace &v) {
    const auto parts = isotropic_cover(v);
    ASSERT_LE(parts.size(), (std::size_t{1} << v.hyperbolic_rank()) + 1);
    std::set<std::uint64_t> covered;
    for (const auto &p : parts) {
        EXPECT_TRUE(p.is_isotropic());
        EXPECT_TRUE(p.is_subspace_of(v));
        for (auto x : p.elements()) {
            covered.insert(x);
        }
    }
    EXPECT_EQ(covered.size(), v.size());
}

TEST(IsotropicCover, Examples) {
    const auto parts = isotropic_cover(span_of({"10", "01"}));
    ASSERT_EQ(parts.size(), 3u);
    std::set<GF2Subspace> got(parts.begin(), parts.end());
    std::set<GF2Subspace> want = {span_of({"10"}), span_of({"01"}), span_of({"11"})};
    EXPECT_EQ(got, want);

    const auto iso = span_of({"1000", "0100"});
    ASSERT_EQ(isotropic_cover(iso).size(), 1u);
    EXPECT_EQ(isotropic_cover(iso).front(), iso);

    const auto km = span_of({"1000", "0010", "0100"});
    EXPECT_LE(isotropic_cover(km).size(), 3u);
    expect_valid_cover(km);
}

TEST(IsotropicCover, ExhaustiveUpToTwelveBits) {
    for (int n = 1; n <= 3; ++n) {
        for (int d = 0; d <= 2 * n; ++d) {
            for_each_subspace(n, d, [&](const GF2Subspace &v) { expect_valid_cover(v); });
        }
    }
    Rng rng(9);
    for (int t = 0; t < 60; ++t) {
        const int n = 4 + static_cast<int>(uniform_index(rng, 3));
        std::vector<std::uint64_t> gens;
        const int g = 1 + static_cast<int>(uniform_index(rng, 2 * n));
        for (int i = 0; i < g; ++i) {
            gens.push_back(uniform_index(rng, std::uint64_t{1} << (2 * n)));
        }
        expect_valid_cover(GF2Subspace::span_bits(n, gens));
    }
}

TEST(ForEachSubspace, CountsMatchGaussianBinomials) {
    // [4 choose d]_2 = 1, 15, 35, 15, 1
    const std::size_t want[] = {1, 15, 35, 15, 1};
    for (int d = 0; d <= 4; ++d) {
        std::set<GF2Subspace> seen;
        for_each_subspace(2, d, [&](const GF2Subspace &v) {
            EXPECT_EQ(v.dim(), d);
            seen.insert(v);
        });
        EXPECT_EQ(seen.size(), want[d]);
    }
}

TEST(EnumerateLagrangians, Counts) {
    EXPECT_EQ(enumerate_lagrangians(1).size(), 3u);
    EXPECT_EQ(enumerate_lagrangians(2).size(), 15u);
    EXPECT_EQ(enumerate_lagrangians(3).size(), 135u);
    EXPECT_EQ(enumerate_lagrangians(4).size(), 2295u);
    EXPECT_THROW(enumerate_lagrangians(5), CapExceeded);
    EXPECT_EQ(oracle_ref::brute_force_lagrangian_count(2), 15u);
    EXPECT_EQ(oracle_ref::brute_force_lagrangian_count(3), 135u);
}

TEST(EnumerateLagrangians, DistinctSortedLagrangian) {
    const auto all = enumerate_lagrangians(3);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::set<GF2Subspace>(all.begin(), all.end()).size(), all.size());
    for (const auto &v : all) {
        EXPECT_TRUE(v.is_lagrangian());
    }
    const auto one = enumerate_lagrangians(1);
    std::set<GF2Subspace> want = {span_of({"10"}), span_of({"01"}), span_of({"11"})};
    EXPECT_EQ(std::set<GF2Subspace>(one.begin(), one.end()), want);
}

}  // namespace
}  // namespace stabkit
