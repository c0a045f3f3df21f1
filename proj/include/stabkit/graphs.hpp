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

#ifndef STABKIT_GRAPHS_HPP_
#define STABKIT_GRAPHS_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/gf2.hpp"

namespace stabkit {

/// Undirected simple graph on vertices 0..N-1 with a dense adjacency matrix.
/// Vertices may carry a WeylLabel tag.
class SimpleGraph {
   public:
    SimpleGraph() = default;
    explicit SimpleGraph(int order)
        : order_(order), adj_(static_cast<std::size_t>(order) * order, 0), tags_(order) {
        detail::require(order >= 0, "SimpleGraph: order must be non-negative");
    }

    static SimpleGraph complete(int order) {
        SimpleGraph g(order);
        for (int i = 0; i < order; ++i) {
            for (int j = i + 1; j < order; ++j) {
                g.add_edge(i, j);
            }
        }
        return g;
    }

    static SimpleGraph empty(int order) { return SimpleGraph(order); }

    static SimpleGraph cycle(int order) {
        detail::require(order >= 3, "SimpleGraph::cycle: order must be at least 3");
        SimpleGraph g(order);
        for (int i = 0; i < order; ++i) {
            g.add_edge(i, (i + 1) % order);
        }
        return g;
    }

    int order() const { return order_; }

    bool has_edge(int i, int j) const { return adj_[index(i, j)] != 0; }

    void add_edge(int i, int j) { set_edge(i, j, true); }
    void remove_edge(int i, int j) { set_edge(i, j, false); }

    void set_edge(int i, int j, bool present) {
        check_vertex(i);
        check_vertex(j);
        detail::require(i != j, "SimpleGraph: self-loops are not allowed");
        adj_[index(i, j)] = adj_[index(j, i)] = present ? 1 : 0;
    }

    int degree(int i) const {
        check_vertex(i);
        int d = 0;
        for (int j = 0; j < order_; ++j) {
            d += adj_[index(i, j)];
        }
        return d;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (auto a : adj_) {
            twice += a;
        }
        return twice / 2;
    }

    /// Edges (i, j) with i < j, in row-major order.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < order_; ++i) {
            for (int j = i + 1; j < order_; ++j) {
                if (has_edge(i, j)) {
                    out.emplace_back(i, j);
                }
            }
        }
        return out;
    }

    const std::optional<WeylLabel> &tag(int i) const {
        check_vertex(i);
        return tags_[i];
    }
    void set_tag(int i, WeylLabel label) {
        check_vertex(i);
        tags_[i] = label;
    }

    bool operator==(const SimpleGraph &other) const { return order_ == other.order_ && adj_ == other.adj_; }

   private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * order_ + j; }
    void check_vertex(int i) const {
        if (i < 0 || i >= order_) {
            throw InvalidArgument("SimpleGraph: vertex " + std::to_string(i) + " out of range");
        }
    }

    int order_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::optional<WeylLabel>> tags_;
};

/// Vertices are the labels; (i, j) is an edge iff W_i and W_j anticommute.
inline SimpleGraph anticommutation_graph(std::span<const WeylLabel> labels) {
    SimpleGraph g(static_cast<int>(labels.size()));
    std::set<WeylLabel> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!seen.insert(labels[i]).second) {
            throw InvalidArgument("anticommutation_graph: duplicate label " + labels[i].str());
        }
        if (labels[i].n() != labels[0].n()) {
            throw DimensionMismatch("anticommutation_graph: labels have different qubit counts");
        }
        g.set_tag(static_cast<int>(i), labels[i]);
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (symplectic_form(labels[i], labels[j])) {
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return g;
}

inline SimpleGraph complement(const SimpleGraph &g) {
    SimpleGraph out(g.order());
    for (int i = 0; i < g.order(); ++i) {
        if (g.tag(i)) {
            out.set_tag(i, *g.tag(i));
        }
        for (int j = i + 1; j < g.order(); ++j) {
            if (!g.has_edge(i, j)) {
                out.add_edge(i, j);
            }
        }
    }
    return out;
}

/// Vertices of a come first, then those of b shifted by a.order().
inline SimpleGraph disjoint_union(const SimpleGraph &a, const SimpleGraph &b) {
    const int na = a.order();
    SimpleGraph out(na + b.order());
    for (auto [i, j] : a.edges()) {
        out.add_edge(i, j);
    }
    for (auto [i, j] : b.edges()) {
        out.add_edge(na + i, na + j);
    }
    for (int i = 0; i < na; ++i) {
        if (a.tag(i)) {
            out.set_tag(i, *a.tag(i));
        }
    }
    for (int i = 0; i < b.order(); ++i) {
        if (b.tag(i)) {
            out.set_tag(na + i, *b.tag(i));
        }
    }
    return out;
}

/// Strong product; vertex (u, v) has index u * b.order() + v.
inline SimpleGraph strong_product(const SimpleGraph &a, const SimpleGraph &b) {
    const int na = a.order(), nb = b.order();
    SimpleGraph out(na * nb);
    for (int u1 = 0; u1 < na; ++u1) {
        for (int v1 = 0; v1 < nb; ++v1) {
            for (int u2 = 0; u2 < na; ++u2) {
                for (int v2 = 0; v2 < nb; ++v2) {
                    const int p = u1 * nb + v1, q = u2 * nb + v2;
                    if (q <= p) {
                        continue;
                    }
                    const bool same_u = u1 == u2, same_v = v1 == v2;
                    const bool adj_u = !same_u && a.has_edge(u1, u2);
                    const bool adj_v = !same_v && b.has_edge(v1, v2);
                    if ((same_u && adj_v) || (same_v && adj_u) || (adj_u && adj_v)) {
                        out.add_edge(p, q);
                    }
                }
            }
        }
    }
    return out;
}

enum class GraphOp { complement, disjoint_union, strong_product };

inline SimpleGraph compose_graphs(GraphOp op, const SimpleGraph &g1, const SimpleGraph *g2 = nullptr) {
    if (op == GraphOp::complement) {
        return complement(g1);
    }
    if (g2 == nullptr) {
        throw InvalidArgument("compose_graphs: operation needs a second graph");
    }
    return op == GraphOp::disjoint_union ? disjoint_union(g1, *g2) : strong_product(g1, *g2);
}

/// Anticommutation graph of all 4^k Weyl labels on k qubits; vertex i is label i.
inline SimpleGraph pauli_group_graph(int k) {
    detail::require(k >= 1 && k <= 3, "pauli_group_graph: k must lie in 1..3");
    std::vector<WeylLabel> labels;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << (2 * k)); ++x) {
        labels.emplace_back(k, x);
    }
    return anticommutation_graph(labels);
}

/// Sp(2k, 2): nonzero vectors of F_2^{2k}, adjacent iff the form vanishes.
/// Vertex i is label i + 1.
inline SimpleGraph symplectic_graph(int k) {
    detail::require(k >= 1 && k <= 3, "symplectic_graph: k must lie in 1..3");
    const int count = (1 << (2 * k)) - 1;
    SimpleGraph g(count);
    for (int i = 0; i < count; ++i) {
        g.set_tag(i, WeylLabel(k, static_cast<std::uint64_t>(i + 1)));
    }
    for (int i = 0; i < count; ++i) {
        for (int j = i + 1; j < count; ++j) {
            if (detail::symplectic_form_bits(k, i + 1, j + 1) == 0) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

}  // namespace stabkit

#endif  // STABKIT_GRAPHS_HPP_
