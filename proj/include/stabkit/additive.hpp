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

#ifndef STABKIT_ADDITIVE_HPP_
#define STABKIT_ADDITIVE_HPP_

// Additive combinatorics over F_2^{2n}: representation counts, sumsets,
// nearly-linear set extraction from a characteristic distribution, a
// constructive Balog-Szemeredi-Gowers step, and coset (translate) searches.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/fwht.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/random.hpp"
#include "stabkit/state.hpp"

namespace stabkit {

/// Subset of F_2^{2n} stored as a membership bitmap of length 4^n.
class GF2Set {
   public:
    explicit GF2Set(int n) : n_(n) {
        detail::require(n >= 1, "GF2Set: n must be at least 1");
        detail::check_table_qubits(n);
        bits_.assign(std::size_t{1} << (2 * n), 0);
    }

    static GF2Set from_bits(int n, std::span<const std::uint64_t> members) {
        GF2Set out(n);
        for (auto x : members) {
            out.insert(x);
        }
        return out;
    }

    static GF2Set from_labels(int n, std::span<const WeylLabel> members) {
        GF2Set out(n);
        for (const auto &x : members) {
            out.insert(x);
        }
        return out;
    }

    static GF2Set from_subspace(const GF2Subspace &v) {
        GF2Set out(v.n());
        v.for_each_element([&](std::uint64_t x, std::uint64_t) { out.insert(x); });
        return out;
    }

    int n() const { return n_; }
    std::uint64_t universe() const { return bits_.size(); }
    std::uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    void insert(std::uint64_t x) {
        check(x);
        if (!bits_[x]) {
            bits_[x] = 1;
            ++count_;
        }
    }
    void insert(const WeylLabel &x) { insert(label_bits(x)); }

    void erase(std::uint64_t x) {
        check(x);
        if (bits_[x]) {
            bits_[x] = 0;
            --count_;
        }
    }

    bool contains(std::uint64_t x) const { return x < bits_.size() && bits_[x]; }
    bool contains(const WeylLabel &x) const { return contains(label_bits(x)); }

    /// Members in increasing order.
    std::vector<std::uint64_t> members() const {
        std::vector<std::uint64_t> out;
        out.reserve(count_);
        for (std::uint64_t x = 0; x < bits_.size(); ++x) {
            if (bits_[x]) {
                out.push_back(x);
            }
        }
        return out;
    }

    const std::vector<std::uint8_t> &indicator() const { return bits_; }

    bool operator==(const GF2Set &other) const { return n_ == other.n_ && bits_ == other.bits_; }

   private:
    void check(std::uint64_t x) const {
        detail::require(x < bits_.size(), "GF2Set: element exceeds 2n bits");
    }
    std::uint64_t label_bits(const WeylLabel &x) const {
        if (x.n() != n_) {
            throw DimensionMismatch("GF2Set: label and set qubit counts differ");
        }
        return x.bits();
    }

    int n_;
    std::vector<std::uint8_t> bits_;
    std::uint64_t count_ = 0;
};

struct RepresentationCounts {
    DyadicTable r;  // r(x) = |{(a, b) in S^2 : a + b = x}|
    double closure_prob = 0;
    std::int64_t additive_energy = 0;
};

/// Exact integer r(x), via the dyadic transform of the indicator.
inline std::vector<std::int64_t> representation_count_values(const GF2Set &s) {
    std::vector<std::int64_t> f(s.universe());
    const auto &ind = s.indicator();
    for (std::size_t x = 0; x < f.size(); ++x) {
        f[x] = ind[x];
    }
    return xor_self_convolution(std::move(f));
}

inline RepresentationCounts representation_counts(const GF2Set &s) {
    detail::require(!s.empty(), "representation_counts: set is empty");
    const auto r = representation_count_values(s);
    std::vector<double> table(r.size());
    std::int64_t closed = 0;
    std::int64_t energy = 0;
    for (std::size_t x = 0; x < r.size(); ++x) {
        table[x] = static_cast<double>(r[x]);
        energy += r[x] * r[x];
        if (s.contains(x)) {
            closed += r[x];
        }
    }
    const double sz = static_cast<double>(s.size());
    return {DyadicTable(s.n(), TableKind::generic, std::move(table)), static_cast<double>(closed) / (sz * sz), energy};
}

/// P_{a, b in S}[a + b in S].
inline double closure_probability(const GF2Set &s) {
    if (s.empty()) {
        return 0;
    }
    return representation_counts(s).closure_prob;
}

struct SumsetResult {
    GF2Set sumset;
    double doubling = 0;
};

inline SumsetResult sumset_doubling(const GF2Set &s) {
    detail::require(!s.empty(), "sumset_doubling: set is empty");
    const auto r = representation_count_values(s);
    GF2Set sum(s.n());
    for (std::size_t x = 0; x < r.size(); ++x) {
        if (r[x] > 0) {
            sum.insert(x);
        }
    }
    const double doubling = static_cast<double>(sum.size()) / static_cast<double>(s.size());
    return {std::move(sum), doubling};
}

struct ExtractionReport {
    GF2Set set;
    std::uint64_t size = 0;
    double min_mass = 0;      // min over members of 2^n p(x); 0 for an empty set
    double closure_prob = 0;  // 0 for an empty set
    bool success = false;     // |S| >= (gamma/2) 2^n and closure_prob >= gamma/6
    bool gamma_warning = false;  // gamma exceeded the exact gamma of the state
    int attempts = 0;
    std::uint64_t candidates = 0;  // |X|
};

inline constexpr int kDefaultExtractionRetries = 200;

/// Builds X = {x : 2^n p(x) >= gamma/4} and samples S from X by independent
/// inclusion with probability 2^n p(x), retrying until the size and closure
/// goals hold or `retries` attempts have been made. Attempt t draws from
/// substream t of a seed taken from rng.
inline ExtractionReport extract_nearly_linear_set(const PureState &state, double gamma, Rng &rng,
                                                  int retries = kDefaultExtractionRetries) {
    detail::require(gamma > 0, "extract_nearly_linear_set: gamma must be positive");
    detail::require(retries >= 1, "extract_nearly_linear_set: retries must be at least 1");
    const DyadicTable p = char_distribution(state);
    const int n = state.n();
    const double scale = std::ldexp(1.0, n);
    std::vector<std::uint64_t> x_set;
    for (std::uint64_t x = 0; x < p.size(); ++x) {
        if (scale * p[x] >= gamma / 4) {
            x_set.push_back(x);
        }
    }
    const double size_goal = gamma / 2 * scale;
    const double closure_goal = gamma / 6;
    const std::uint64_t base = rng();

    ExtractionReport report{GF2Set(n)};
    report.gamma_warning = gamma > gamma_from_tables(p, weyl_distribution(p)) + 1e-12;
    report.candidates = x_set.size();
    for (int t = 0; t < retries; ++t) {
        Rng sub(substream_seed(base, static_cast<std::uint64_t>(t)));
        GF2Set s(n);
        double min_mass = 0;
        for (auto x : x_set) {
            const double mass = scale * p[x];
            if (uniform01(sub) < mass) {
                s.insert(x);
                min_mass = s.size() == 1 ? mass : std::min(min_mass, mass);
            }
        }
        report.set = std::move(s);
        report.size = report.set.size();
        report.min_mass = min_mass;
        report.closure_prob = closure_probability(report.set);
        report.attempts = t + 1;
        report.success = !report.set.empty() && static_cast<double>(report.size) >= size_goal &&
                         report.closure_prob >= closure_goal;
        if (report.success) {
            break;
        }
    }
    return report;
}

struct BsgOptions {
    int trials = 500;
    double common_factor = 1.0 / 16;  // edge when r(a + b) >= common_factor eps^2 |S|
    double degree_fraction = 0.75;    // keep vertices of degree >= degree_fraction |B|
};

struct BsgStats {
    std::uint64_t b_size = 0;
    double edge_density = 0;
    std::vector<std::uint64_t> degree_histogram;  // 11 bins of degree / |B| by tenths
};

struct BsgResult {
    GF2Set s_prime;
    WeylLabel z_used;
    bool accepted = false;
    int trials_used = 0;
    double doubling = 0;  // of s_prime; 0 when s_prime is empty
    BsgStats stats;
};

/// Lower size bound eps / (2 sqrt 2) |S| and doubling bound 8 eps^-6 an
/// accepted S' satisfies.
inline double bsg_size_bound(double eps, std::uint64_t s_size) {
    return eps / (2 * std::sqrt(2.0)) * static_cast<double>(s_size);
}
inline double bsg_doubling_bound(double eps) { return 8 * std::pow(eps, -6); }

/// Each trial draws Z uniformly from S, sets B = S cap (S + Z), joins a, b in B
/// when r(a + b) is large, and keeps the high-degree vertices as S'. Returns
/// the first S' meeting both bounds, otherwise the largest candidate seen with
/// accepted = false.
inline BsgResult bsg_extract(const GF2Set &s, double eps, Rng &rng, const BsgOptions &opts = {}) {
    detail::require(!s.empty(), "bsg_extract: set is empty");
    detail::require(eps > 0 && eps <= 1, "bsg_extract: eps must lie in (0, 1]");
    detail::require(opts.trials >= 1, "bsg_extract: trials must be at least 1");
    const auto rc = representation_counts(s);
    if (eps > rc.closure_prob + 1e-12) {
        throw InvalidArgument("bsg_extract: eps " + std::to_string(eps) + " exceeds the closure probability " +
                              std::to_string(rc.closure_prob));
    }
    const int n = s.n();
    const auto members = s.members();
    const double edge_threshold = opts.common_factor * eps * eps * static_cast<double>(s.size());
    const double size_bound = bsg_size_bound(eps, s.size());
    const double doubling_bound = bsg_doubling_bound(eps);
    const std::uint64_t base = rng();

    std::optional<BsgResult> best;
    for (int t = 0; t < opts.trials; ++t) {
        Rng sub(substream_seed(base, static_cast<std::uint64_t>(t)));
        const std::uint64_t z = members[uniform_index(sub, members.size())];
        std::vector<std::uint64_t> b;
        for (auto a : members) {
            if (s.contains(a ^ z)) {
                b.push_back(a);
            }
        }
        BsgResult cur{GF2Set(n), WeylLabel(n, z), false, 0, 0, {}};
        cur.trials_used = t + 1;
        cur.stats.b_size = b.size();
        cur.stats.degree_histogram.assign(11, 0);
        const double need = opts.degree_fraction * static_cast<double>(b.size());
        std::uint64_t edges = 0;
        for (auto a : b) {
            std::uint64_t deg = 0;
            for (auto c : b) {
                if (rc.r[a ^ c] >= edge_threshold) {
                    ++deg;
                }
            }
            edges += deg;
            cur.stats.degree_histogram[deg * 10 / b.size()]++;
            if (static_cast<double>(deg) >= need) {
                cur.s_prime.insert(a);
            }
        }
        if (!b.empty()) {
            cur.stats.edge_density = static_cast<double>(edges) / (static_cast<double>(b.size()) * b.size());
        }
        if (!cur.s_prime.empty()) {
            cur.doubling = sumset_doubling(cur.s_prime).doubling;
            cur.accepted = static_cast<double>(cur.s_prime.size()) >= size_bound && cur.doubling <= doubling_bound;
        }
        if (cur.accepted) {
            return cur;
        }
        if (!best || cur.s_prime.size() > best->s_prime.size()) {
            best = std::move(cur);
        }
    }
    best->trials_used = opts.trials;
    return std::move(*best);
}

/// A uniformly random subspace of dimension `dim` together with `junk` random
/// points outside it.
inline GF2Set structured_set(int n, int dim, int junk, Rng &rng, GF2Subspace *subspace_out = nullptr) {
    detail::require(n >= 1, "structured_set: n must be at least 1");
    detail::require(dim >= 0 && dim <= 2 * n, "structured_set: dim out of range");
    const std::uint64_t universe = std::uint64_t{1} << (2 * n);
    detail::require(junk >= 0 && static_cast<std::uint64_t>(junk) <= universe - (std::uint64_t{1} << dim),
                    "structured_set: too many junk points");
    GF2Subspace v(n);
    std::vector<std::uint64_t> gens;
    while (v.dim() < dim) {
        const std::uint64_t x = uniform_index(rng, universe);
        if (!v.contains(x)) {
            gens.push_back(x);
            v = GF2Subspace::span_bits(n, gens);
        }
    }
    GF2Set s = GF2Set::from_subspace(v);
    while (s.size() < v.size() + static_cast<std::uint64_t>(junk)) {
        const std::uint64_t x = uniform_index(rng, universe);
        if (!v.contains(x)) {
            s.insert(x);
        }
    }
    if (subspace_out) {
        *subspace_out = v;
    }
    return s;
}

struct HeavyTranslate {
    WeylLabel coset_rep;
    std::uint64_t overlap = 0;
};

/// The coset V + y holding the most points of S; y is the canonical
/// (smallest) representative, ties go to the smallest y.
inline HeavyTranslate find_heavy_translate(const GF2Set &s, const GF2Subspace &v) {
    if (v.n() != s.n()) {
        throw DimensionMismatch("find_heavy_translate: subspace and set qubit counts differ");
    }
    std::map<std::uint64_t, std::uint64_t> tally;
    for (auto x : s.members()) {
        tally[v.reduce(x)]++;
    }
    HeavyTranslate best{WeylLabel(s.n(), 0), 0};
    for (const auto &[rep, count] : tally) {
        if (count > best.overlap) {
            best = {WeylLabel(s.n(), rep), count};
        }
    }
    return best;
}

inline constexpr int kMaxCoverSearchBits = 8;

struct CoverSearchResult {
    GF2Subspace subspace;
    std::vector<WeylLabel> translates;  // canonical representatives, increasing
    double doubling = 0;
    double pfr_bound = 0;  // (2K)^9 with K the doubling of S
};

/// Exhaustive search, for 2n <= 8, over subspaces V with |V| <= |S| for the one
/// covering S with the fewest translates. Ties prefer the larger subspace, then
/// the earlier one in enumeration order.
inline CoverSearchResult pfr_cover_search(const GF2Set &s) {
    detail::require(!s.empty(), "pfr_cover_search: set is empty");
    if (2 * s.n() > kMaxCoverSearchBits) {
        throw CapExceeded("pfr_cover_search: 2n = " + std::to_string(2 * s.n()) + " exceeds the cap of " +
                          std::to_string(kMaxCoverSearchBits));
    }
    const auto members = s.members();
    std::optional<GF2Subspace> best;
    std::size_t best_count = 0;
    for (int d = 0; d <= 2 * s.n() && (std::uint64_t{1} << d) <= s.size(); ++d) {
        for_each_subspace(s.n(), d, [&](const GF2Subspace &v) {
            std::vector<std::uint64_t> reps;
            reps.reserve(members.size());
            for (auto x : members) {
                reps.push_back(v.reduce(x));
            }
            std::sort(reps.begin(), reps.end());
            const auto count = static_cast<std::size_t>(std::unique(reps.begin(), reps.end()) - reps.begin());
            if (!best || count <= best_count) {
                if (!best || count < best_count || v.dim() > best->dim()) {
                    best = v;
                    best_count = count;
                }
            }
        });
    }
    CoverSearchResult out{*best, {}, 0, 0};
    std::vector<std::uint64_t> reps;
    for (auto x : members) {
        reps.push_back(best->reduce(x));
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    for (auto r : reps) {
        out.translates.emplace_back(s.n(), r);
    }
    out.doubling = sumset_doubling(s).doubling;
    out.pfr_bound = std::pow(2 * out.doubling, 9);
    return out;
}

}  // namespace stabkit

#endif  // STABKIT_ADDITIVE_HPP_
