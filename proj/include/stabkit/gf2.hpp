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

#ifndef STABKIT_GF2_HPP_
#define STABKIT_GF2_HPP_

// Symplectic linear algebra over F_2^{2n}.
//
// A label x = (x1, x2) is packed into one 64-bit word with x1 in the low n
// bits and x2 in the next n bits. Bit i of each half belongs to qubit i.
// Every "pick an element" step in this file scans labels in increasing order
// of that packed integer, so all outputs are deterministic.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabkit/errors.hpp"

namespace stabkit {

inline constexpr int kMaxLabelQubits = 16;

namespace detail {

inline std::uint64_t low_mask(int bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

inline int parity(std::uint64_t v) {
    return std::popcount(v) & 1;
}

/// [a, b] for packed labels on n qubits.
inline int symplectic_form_bits(int n, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t m = low_mask(n);
    const std::uint64_t swapped = (b >> n) | ((b & m) << n);
    return parity(a & swapped);
}

/// Exponent e (mod 4) with W_a W_b = i^e W_{a+b}.
inline int weyl_product_phase_bits(int n, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t m = low_mask(n);
    const std::uint64_t a1 = a & m, a2 = a >> n;
    const std::uint64_t b1 = b & m, b2 = b >> n;
    const std::uint64_t c1 = a1 ^ b1, c2 = a2 ^ b2;
    const int e = std::popcount(a1 & a2) + std::popcount(b1 & b2) + 2 * std::popcount(a2 & b1) -
                  std::popcount(c1 & c2);
    return ((e % 4) + 4) % 4;
}

inline int leading_bit(std::uint64_t v) {
    return 63 - std::countl_zero(v);
}

/// Reduced echelon basis of span(vectors), rows sorted by descending leading
/// bit. Zero rows are dropped.
inline std::vector<std::uint64_t> reduced_echelon(std::span<const std::uint64_t> vectors) {
    std::array<std::uint64_t, 64> pivot{};
    for (std::uint64_t v : vectors) {
        while (v != 0) {
            const int b = leading_bit(v);
            if (pivot[b] == 0) {
                pivot[b] = v;
                break;
            }
            v ^= pivot[b];
        }
    }
    for (int b = 0; b < 64; ++b) {
        if (pivot[b] == 0) {
            continue;
        }
        for (int hb = b + 1; hb < 64; ++hb) {
            if (pivot[hb] != 0 && ((pivot[hb] >> b) & 1)) {
                pivot[hb] ^= pivot[b];
            }
        }
    }
    std::vector<std::uint64_t> out;
    for (int b = 63; b >= 0; --b) {
        if (pivot[b] != 0) {
            out.push_back(pivot[b]);
        }
    }
    return out;
}

inline int gf2_rank(std::vector<std::uint64_t> rows) {
    return static_cast<int>(reduced_echelon(rows).size());
}

struct SymplecticBasis {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::vector<std::uint64_t> radical;
};

/// Symplectic Gram-Schmidt for an arbitrary alternating bilinear form given as
/// a callable form(u, v) -> {0,1}. Input vectors must be linearly independent.
template <typename Form>
SymplecticBasis symplectic_basis(std::vector<std::uint64_t> vecs, Form form) {
    SymplecticBasis out;
    while (!vecs.empty()) {
        const std::uint64_t v = vecs.front();
        vecs.erase(vecs.begin());
        auto partner = std::find_if(vecs.begin(), vecs.end(), [&](std::uint64_t u) { return form(v, u) == 1; });
        if (partner == vecs.end()) {
            out.radical.push_back(v);
            continue;
        }
        const std::uint64_t w = *partner;
        vecs.erase(partner);
        out.pairs.emplace_back(v, w);
        for (auto &u : vecs) {
            const int uw = form(u, w);
            const int uv = form(u, v);
            if (uw) {
                u ^= v;
            }
            if (uv) {
                u ^= w;
            }
        }
    }
    return out;
}

// GF(2^k) arithmetic with a fixed primitive polynomial per degree.
inline constexpr std::array<std::uint32_t, 17> kFieldPolys = {
    0x0,    0x3,    0x7,    0xB,    0x13,   0x25,   0x43,    0x89,   0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

inline std::uint64_t gf_mul(std::uint64_t a, std::uint64_t b, int k) {
    const std::uint64_t poly = kFieldPolys[k];
    std::uint64_t r = 0;
    while (b != 0) {
        if (b & 1) {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if ((a >> k) & 1) {
            a ^= poly;
        }
    }
    return r;
}

inline int gf_trace(std::uint64_t a, int k) {
    std::uint64_t t = 0;
    std::uint64_t p = a;
    for (int i = 0; i < k; ++i) {
        t ^= p;
        p = gf_mul(p, p, k);
    }
    return static_cast<int>(t & 1);
}

}  // namespace detail

/// A vector x = (x1, x2) in F_2^{2n}, naming the Weyl operator W_x.
class WeylLabel {
   public:
    WeylLabel() = default;
    WeylLabel(int n, std::uint64_t bits) : n_(n), bits_(bits) {
        detail::require(n >= 1 && n <= kMaxLabelQubits, "WeylLabel: n out of range");
        detail::require((bits >> (2 * n)) == 0, "WeylLabel: bits exceed 2n");
    }

    static WeylLabel from_halves(int n, std::uint64_t x1, std::uint64_t x2) {
        detail::require(x1 <= detail::low_mask(n) && x2 <= detail::low_mask(n), "WeylLabel: half exceeds n bits");
        return WeylLabel(n, x1 | (x2 << n));
    }

    /// Parses a 2n-character 0/1 string: x1 for qubits 0..n-1, then x2.
    static WeylLabel parse(std::string_view text) {
        detail::require(!text.empty() && text.size() % 2 == 0, "WeylLabel: text length must be even and nonzero");
        const int n = static_cast<int>(text.size() / 2);
        detail::require(n <= kMaxLabelQubits, "WeylLabel: too many qubits");
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1') {
                bits |= std::uint64_t{1} << i;
            } else if (text[i] != '0') {
                throw InvalidArgument("WeylLabel: expected only '0' and '1' in '" + std::string(text) + "'");
            }
        }
        return WeylLabel(n, bits);
    }

    int n() const { return n_; }
    std::uint64_t bits() const { return bits_; }
    std::uint64_t x1() const { return bits_ & detail::low_mask(n_); }
    std::uint64_t x2() const { return bits_ >> n_; }
    bool is_identity() const { return bits_ == 0; }

    std::string str() const {
        std::string out(2 * static_cast<std::size_t>(n_), '0');
        for (int i = 0; i < 2 * n_; ++i) {
            if ((bits_ >> i) & 1) {
                out[i] = '1';
            }
        }
        return out;
    }

    WeylLabel operator+(const WeylLabel &other) const {
        if (other.n_ != n_) {
            throw DimensionMismatch("WeylLabel: qubit counts differ");
        }
        return WeylLabel(n_, bits_ ^ other.bits_);
    }

    bool operator==(const WeylLabel &) const = default;
    auto operator<=>(const WeylLabel &) const = default;

   private:
    int n_ = 1;
    std::uint64_t bits_ = 0;
};

/// [x, y] = <x1, y2> + <x2, y1> mod 2. Equals 1 iff W_x and W_y anticommute.
inline int symplectic_form(const WeylLabel &x, const WeylLabel &y) {
    if (x.n() != y.n()) {
        throw DimensionMismatch("symplectic_form: qubit counts differ");
    }
    return detail::symplectic_form_bits(x.n(), x.bits(), y.bits());
}

/// Subspace of F_2^{2n} held as a reduced row-echelon basis (rows sorted by
/// descending leading bit), with its symplectic classification cached.
class GF2Subspace {
   public:
    GF2Subspace() = default;

    /// The trivial subspace {0}.
    explicit GF2Subspace(int n) : n_(n) {
        detail::require(n >= 1 && n <= kMaxLabelQubits, "GF2Subspace: n out of range");
    }

    static GF2Subspace span_bits(int n, std::span<const std::uint64_t> generators) {
        GF2Subspace out(n);
        for (std::uint64_t g : generators) {
            detail::require((g >> (2 * n)) == 0, "GF2Subspace: generator exceeds 2n bits");
        }
        out.basis_ = detail::reduced_echelon(generators);
        out.classify();
        return out;
    }

    static GF2Subspace span(std::span<const WeylLabel> generators) {
        detail::require(!generators.empty(), "GF2Subspace::span: empty generator list");
        const int n = generators.front().n();
        std::vector<std::uint64_t> bits;
        bits.reserve(generators.size());
        for (const auto &g : generators) {
            if (g.n() != n) {
                throw DimensionMismatch("GF2Subspace::span: generators have different qubit counts");
            }
            bits.push_back(g.bits());
        }
        return span_bits(n, bits);
    }

    int n() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    std::uint64_t size() const { return std::uint64_t{1} << dim(); }
    const std::vector<std::uint64_t> &basis_bits() const { return basis_; }

    std::vector<WeylLabel> basis() const {
        std::vector<WeylLabel> out;
        for (auto b : basis_) {
            out.emplace_back(n_, b);
        }
        return out;
    }

    bool is_isotropic() const { return isotropic_; }
    bool is_lagrangian() const { return isotropic_ && dim() == n_; }
    /// Number of hyperbolic pairs: half the rank of the restricted form.
    int hyperbolic_rank() const { return k_; }
    /// Dimension of the radical (isotropic part) of the restricted form.
    int radical_dim() const { return dim() - 2 * k_; }

    /// Canonical coset representative: the numerically smallest element of x + V.
    std::uint64_t reduce(std::uint64_t x) const {
        for (auto row : basis_) {
            if ((x >> detail::leading_bit(row)) & 1) {
                x ^= row;
            }
        }
        return x;
    }

    bool contains(std::uint64_t x) const { return reduce(x) == 0; }
    bool contains(const WeylLabel &x) const {
        if (x.n() != n_) {
            throw DimensionMismatch("GF2Subspace::contains: qubit counts differ");
        }
        return contains(x.bits());
    }

    bool is_subspace_of(const GF2Subspace &other) const {
        if (other.n_ != n_) {
            throw DimensionMismatch("GF2Subspace::is_subspace_of: qubit counts differ");
        }
        return std::all_of(basis_.begin(), basis_.end(), [&](std::uint64_t b) { return other.contains(b); });
    }

    /// Visits every element once, in Gray-code order starting from 0. The
    /// callback receives (element, gray_code_index) where bit i of the index
    /// says whether basis row i participates.
    template <typename F>
    void for_each_element(F &&visit) const {
        std::uint64_t x = 0;
        std::uint64_t gray = 0;
        visit(x, gray);
        for (std::uint64_t i = 1; i < size(); ++i) {
            const int flip = std::countr_zero(i);
            x ^= basis_[flip];
            gray ^= std::uint64_t{1} << flip;
            visit(x, gray);
        }
    }

    std::vector<std::uint64_t> elements() const {
        std::vector<std::uint64_t> out;
        out.reserve(size());
        for_each_element([&](std::uint64_t x, std::uint64_t) { out.push_back(x); });
        return out;
    }

    bool operator==(const GF2Subspace &other) const { return n_ == other.n_ && basis_ == other.basis_; }
    bool operator<(const GF2Subspace &other) const {
        if (n_ != other.n_) {
            return n_ < other.n_;
        }
        return basis_ < other.basis_;
    }

   private:
    void classify() {
        const int d = dim();
        isotropic_ = true;
        std::vector<std::uint64_t> gram(d, 0);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (detail::symplectic_form_bits(n_, basis_[i], basis_[j])) {
                    gram[i] |= std::uint64_t{1} << j;
                    isotropic_ = false;
                }
            }
        }
        k_ = detail::gf2_rank(gram) / 2;
    }

    int n_ = 1;
    std::vector<std::uint64_t> basis_;
    bool isotropic_ = true;
    int k_ = 0;
};

/// Spans the generators and classifies the result. All-zero input gives {0}.
inline GF2Subspace span_and_classify(std::span<const WeylLabel> generators) {
    return GF2Subspace::span(generators);
}

/// Generators <Z_1, X_1, ..., Z_k, X_k, Z_{k+1}, ..., Z_{k+m}> of a subspace:
/// paired generators have form 1 with their partner and 0 with everything else.
struct SymplecticDecomposition {
    std::vector<std::pair<WeylLabel, WeylLabel>> hyperbolic_pairs;
    std::vector<WeylLabel> isotropic_part;

    int k() const { return static_cast<int>(hyperbolic_pairs.size()); }
    int m() const { return static_cast<int>(isotropic_part.size()); }
};

inline SymplecticDecomposition symplectic_gram_schmidt(const GF2Subspace &v) {
    const int n = v.n();
    auto basis = detail::symplectic_basis(
        v.basis_bits(), [n](std::uint64_t a, std::uint64_t b) { return detail::symplectic_form_bits(n, a, b); });
    SymplecticDecomposition out;
    for (auto [z, x] : basis.pairs) {
        out.hyperbolic_pairs.emplace_back(WeylLabel(n, z), WeylLabel(n, x));
    }
    for (auto r : basis.radical) {
        out.isotropic_part.emplace_back(n, r);
    }
    return out;
}

/// Greedy Lagrangian extension: scans labels in increasing packed order and
/// adjoins each one that commutes with the current basis and is independent.
inline GF2Subspace extend_to_lagrangian(const GF2Subspace &v0) {
    if (!v0.is_isotropic()) {
        throw InvalidArgument("extend_to_lagrangian: input subspace is not isotropic");
    }
    const int n = v0.n();
    std::vector<std::uint64_t> rows = v0.basis_bits();
    GF2Subspace current = v0;
    const std::uint64_t universe = std::uint64_t{1} << (2 * n);
    for (std::uint64_t x = 1; x < universe && current.dim() < n; ++x) {
        if (current.contains(x)) {
            continue;
        }
        const bool commutes = std::all_of(rows.begin(), rows.end(), [&](std::uint64_t r) {
            return detail::symplectic_form_bits(n, r, x) == 0;
        });
        if (commutes) {
            rows.push_back(x);
            current = GF2Subspace::span_bits(n, rows);
        }
    }
    return current;
}

/// Covers V by 2^k + 1 isotropic subspaces of V (one subspace when k = 0).
///
/// The hyperbolic block of V is identified with F_{2^k} x F_{2^k} under the
/// trace form Tr(a b' + a' b); the lines {(a, c a)} and {(0, b)} form a
/// symplectic spread there. A symplectic basis of the model space is matched
/// to the hyperbolic pairs of V, and the radical is adjoined to every part.
inline std::vector<GF2Subspace> isotropic_cover(const GF2Subspace &v) {
    const int n = v.n();
    const auto basis = detail::symplectic_basis(
        v.basis_bits(), [n](std::uint64_t a, std::uint64_t b) { return detail::symplectic_form_bits(n, a, b); });
    const int k = static_cast<int>(basis.pairs.size());
    if (k == 0) {
        return {v};
    }
    if (k >= static_cast<int>(detail::kFieldPolys.size())) {
        throw CapExceeded("isotropic_cover: hyperbolic rank too large");
    }

    const std::uint64_t field_mask = detail::low_mask(k);
    auto model_form = [k, field_mask](std::uint64_t u, std::uint64_t w) {
        const std::uint64_t a = u & field_mask, b = u >> k;
        const std::uint64_t a2 = w & field_mask, b2 = w >> k;
        return detail::gf_trace(detail::gf_mul(a, b2, k) ^ detail::gf_mul(a2, b, k), k);
    };
    std::vector<std::uint64_t> unit_vectors;
    for (int i = 0; i < 2 * k; ++i) {
        unit_vectors.push_back(std::uint64_t{1} << i);
    }
    const auto model = detail::symplectic_basis(unit_vectors, model_form);
    if (static_cast<int>(model.pairs.size()) != k) {
        throw CertificateViolation("isotropic_cover: trace form is degenerate");
    }

    // Isometry: u = sum_i alpha_i e_i + beta_i f_i with alpha_i = B(u, f_i),
    // beta_i = B(u, e_i), mapped to sum alpha_i z_i + beta_i x_i.
    auto to_v = [&](std::uint64_t u) {
        std::uint64_t out = 0;
        for (int i = 0; i < k; ++i) {
            const auto [e, f] = model.pairs[i];
            if (model_form(u, f)) {
                out ^= basis.pairs[i].first;
            }
            if (model_form(u, e)) {
                out ^= basis.pairs[i].second;
            }
        }
        return out;
    };

    auto part_from = [&](const std::vector<std::uint64_t> &model_generators) {
        std::vector<std::uint64_t> gens = basis.radical;
        for (auto u : model_generators) {
            gens.push_back(to_v(u));
        }
        return GF2Subspace::span_bits(n, gens);
    };

    std::vector<GF2Subspace> parts;
    std::vector<std::uint64_t> gens;
    for (int i = 0; i < k; ++i) {
        gens.push_back(std::uint64_t{1} << (k + i));
    }
    parts.push_back(part_from(gens));
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << k); ++c) {
        gens.clear();
        for (int i = 0; i < k; ++i) {
            const std::uint64_t a = std::uint64_t{1} << i;
            gens.push_back(a | (detail::gf_mul(c, a, k) << k));
        }
        parts.push_back(part_from(gens));
    }
    return parts;
}

/// Calls visit(GF2Subspace) for every subspace of F_2^{2n} of dimension `dim`,
/// each exactly once, by enumerating reduced echelon forms directly.
template <typename F>
void for_each_subspace(int n, int dim, F &&visit) {
    const int width = 2 * n;
    detail::require(n >= 1 && n <= 6, "for_each_subspace: n out of range (1..6)");
    detail::require(dim >= 0 && dim <= width, "for_each_subspace: dim out of range");
    if (dim == 0) {
        visit(GF2Subspace(n));
        return;
    }
    // Choose pivot positions as a bitmask with `dim` bits set.
    for (std::uint64_t pivots = 0; pivots < (std::uint64_t{1} << width); ++pivots) {
        if (std::popcount(pivots) != dim) {
            continue;
        }
        std::vector<int> lead;
        for (int b = width - 1; b >= 0; --b) {
            if ((pivots >> b) & 1) {
                lead.push_back(b);
            }
        }
        // Free positions per row: non-pivot bits below the row's leading bit.
        std::vector<std::vector<int>> free(dim);
        int total_free = 0;
        for (int r = 0; r < dim; ++r) {
            for (int b = 0; b < lead[r]; ++b) {
                if (!((pivots >> b) & 1)) {
                    free[r].push_back(b);
                }
            }
            total_free += static_cast<int>(free[r].size());
        }
        std::vector<std::uint64_t> rows(dim);
        for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << total_free); ++assign) {
            int used = 0;
            for (int r = 0; r < dim; ++r) {
                std::uint64_t row = std::uint64_t{1} << lead[r];
                for (int b : free[r]) {
                    if ((assign >> used) & 1) {
                        row |= std::uint64_t{1} << b;
                    }
                    ++used;
                }
                rows[r] = row;
            }
            visit(GF2Subspace::span_bits(n, rows));
        }
    }
}

/// Every Lagrangian subspace of F_2^{2n}, each once, sorted by reduced basis.
/// Count is prod_{j=1..n} (2^j + 1).
inline std::vector<GF2Subspace> enumerate_lagrangians(int n) {
    detail::require(n >= 1, "enumerate_lagrangians: n must be positive");
    if (n > 4) {
        throw CapExceeded("enumerate_lagrangians: n = " + std::to_string(n) + " exceeds the cap of 4");
    }
    const std::uint64_t universe = std::uint64_t{1} << (2 * n);
    std::set<std::vector<std::uint64_t>> level = {{}};
    for (int d = 0; d < n; ++d) {
        std::set<std::vector<std::uint64_t>> next;
        for (const auto &rows : level) {
            const GF2Subspace cur = GF2Subspace::span_bits(n, rows);
            std::vector<std::uint64_t> ext = rows;
            ext.push_back(0);
            for (std::uint64_t x = 1; x < universe; ++x) {
                if (cur.contains(x)) {
                    continue;
                }
                bool commutes = true;
                for (auto r : rows) {
                    if (detail::symplectic_form_bits(n, r, x)) {
                        commutes = false;
                        break;
                    }
                }
                if (!commutes) {
                    continue;
                }
                ext.back() = x;
                next.insert(detail::reduced_echelon(ext));
            }
        }
        level = std::move(next);
    }
    std::vector<GF2Subspace> out;
    out.reserve(level.size());
    for (const auto &rows : level) {
        out.push_back(GF2Subspace::span_bits(n, rows));
    }
    return out;
}

}  // namespace stabkit

#endif  // STABKIT_GF2_HPP_
