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

#ifndef STABKIT_IO_HPP_
#define STABKIT_IO_HPP_

// Text and JSON file formats:
//   labels / sets / subspace bases  one 2n-character 0/1 string per line
//   graphs                          "N" on the first line, then "i j" per edge
//   states                          {"n": int, "re": [...], "im": [...]}
// Blank lines and lines starting with '#' are skipped in the text formats.

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stabkit/additive.hpp"
#include "stabkit/errors.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/graphs.hpp"
#include "stabkit/state.hpp"

namespace stabkit::io {

namespace detail {

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> content_lines(std::istream &in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty() && line[0] != '#') {
            out.push_back(line);
        }
    }
    return out;
}

inline std::ifstream open_input(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    return in;
}

}  // namespace detail

/// Reads labels; `n` is required only when the input may be empty.
inline std::vector<WeylLabel> read_labels(std::istream &in, std::optional<int> n = std::nullopt) {
    std::vector<WeylLabel> out;
    for (const auto &line : detail::content_lines(in)) {
        out.push_back(WeylLabel::parse(line));
        if (!n) {
            n = out.back().n();
        } else if (out.back().n() != *n) {
            throw DimensionMismatch("label '" + line + "' does not have " + std::to_string(2 * *n) + " characters");
        }
    }
    return out;
}

inline void write_labels(std::ostream &out, const std::vector<WeylLabel> &labels) {
    for (const auto &l : labels) {
        out << l.str() << '\n';
    }
}

inline GF2Subspace read_subspace(std::istream &in, std::optional<int> n = std::nullopt) {
    const auto rows = read_labels(in, n);
    if (rows.empty()) {
        stabkit::detail::require(n.has_value(), "read_subspace: empty basis needs an explicit n");
        return GF2Subspace(*n);
    }
    return GF2Subspace::span(rows);
}

inline void write_subspace(std::ostream &out, const GF2Subspace &v) { write_labels(out, v.basis()); }

inline GF2Set read_set(std::istream &in, std::optional<int> n = std::nullopt) {
    const auto labels = read_labels(in, n);
    if (labels.empty()) {
        stabkit::detail::require(n.has_value(), "read_set: empty set needs an explicit n");
        return GF2Set(*n);
    }
    return GF2Set::from_labels(labels.front().n(), labels);
}

inline void write_set(std::ostream &out, const GF2Set &s) {
    for (auto x : s.members()) {
        out << WeylLabel(s.n(), x).str() << '\n';
    }
}

inline SimpleGraph read_graph(std::istream &in) {
    const auto lines = detail::content_lines(in);
    stabkit::detail::require(!lines.empty(), "read_graph: missing vertex count");
    auto parse_int = [](const std::string &tok, const std::string &line) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != tok.size()) {
            throw InvalidArgument("read_graph: malformed line '" + line + "'");
        }
        return v;
    };
    std::istringstream head(lines[0]);
    std::string tok, extra;
    head >> tok;
    stabkit::detail::require(!(head >> extra), "read_graph: first line must hold only N");
    const int order = parse_int(tok, lines[0]);
    stabkit::detail::require(order >= 0, "read_graph: negative vertex count");
    SimpleGraph g(order);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::istringstream ls(lines[k]);
        std::string a, b;
        ls >> a >> b;
        stabkit::detail::require(!b.empty() && !(ls >> extra), "read_graph: edge line must be 'i j'");
        const int i = parse_int(a, lines[k]);
        const int j = parse_int(b, lines[k]);
        stabkit::detail::require(i >= 0 && i < order && j >= 0 && j < order, "read_graph: vertex out of range");
        g.add_edge(i, j);
    }
    return g;
}

inline void write_graph(std::ostream &out, const SimpleGraph &g) {
    out << g.order() << '\n';
    for (const auto &[i, j] : g.edges()) {
        out << i << ' ' << j << '\n';
    }
}

inline PureState state_from_json(const nlohmann::json &j) {
    try {
        const int n = j.at("n").get<int>();
        const auto re = j.at("re").get<std::vector<double>>();
        const auto im = j.at("im").get<std::vector<double>>();
        stabkit::detail::require(n >= 1, "state file: n must be at least 1");
        stabkit::detail::check_state_qubits(n);
        const std::size_t dim = std::size_t{1} << n;
        stabkit::detail::require(re.size() == dim && im.size() == dim, "state file: re and im must have length 2^n");
        std::vector<Amplitude> amps(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            amps[i] = {re[i], im[i]};
        }
        return PureState(n, std::move(amps));
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("state file: ") + e.what());
    }
}

inline nlohmann::json state_to_json(const PureState &s) {
    std::vector<double> re, im;
    for (const auto &a : s.amplitudes()) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    return {{"n", s.n()}, {"re", re}, {"im", im}};
}

inline PureState read_state(std::istream &in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("state file: ") + e.what());
    }
    return state_from_json(j);
}

inline std::vector<WeylLabel> read_labels_file(const std::string &path) {
    auto in = detail::open_input(path);
    return read_labels(in);
}
inline GF2Subspace read_subspace_file(const std::string &path, std::optional<int> n = std::nullopt) {
    auto in = detail::open_input(path);
    return read_subspace(in, n);
}
inline GF2Set read_set_file(const std::string &path, std::optional<int> n = std::nullopt) {
    auto in = detail::open_input(path);
    return read_set(in, n);
}
inline SimpleGraph read_graph_file(const std::string &path) {
    auto in = detail::open_input(path);
    return read_graph(in);
}
inline PureState read_state_file(const std::string &path) {
    auto in = detail::open_input(path);
    return read_state(in);
}

}  // namespace stabkit::io

#endif  // STABKIT_IO_HPP_
