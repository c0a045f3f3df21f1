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

#ifndef STABKIT_EXPERIMENT_HPP_
#define STABKIT_EXPERIMENT_HPP_

// Batch experiments behind the command-line tool. Every randomized quantity
// derives from ExperimentConfig::seed, so a report is a pure function of its
// config (the optional wall-clock field aside).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "stabkit/additive.hpp"
#include "stabkit/errors.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/graphs.hpp"
#include "stabkit/io.hpp"
#include "stabkit/oracle.hpp"
#include "stabkit/random.hpp"
#include "stabkit/sampling.hpp"
#include "stabkit/state.hpp"
#include "stabkit/theta.hpp"
#include "stabkit/uncertainty.hpp"

namespace stabkit {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string> &experiment_commands() {
    static const std::vector<std::string> names = {"test",   "gamma",       "fidelity", "sandwich-sweep", "theta",
                                                   "uncertainty", "extract", "bsg",      "cover"};
    return names;
}

struct ExperimentConfig {
    std::string command;

    // state source
    std::optional<std::string> kind;
    int n = 1;
    double noise = 0;
    std::optional<std::string> state_file;
    std::optional<std::uint64_t> seed;

    // tester and gamma
    double eps1 = 0.9;
    double eps2 = 0;
    double C = 1;
    double delta = 1.0 / 3;
    std::optional<std::int64_t> m;
    std::optional<int> trials;
    bool exact = false;

    // theta and uncertainty
    std::optional<int> pauli_graph;
    std::optional<int> symplectic_graph;
    std::optional<int> complete;
    std::optional<int> empty;
    std::optional<int> cycle;
    std::optional<std::string> graph_file;
    std::optional<std::string> labels_file;
    double tol = 1e-6;
    int num_labels = 8;
    int restarts = 64;

    // extraction, bsg, cover
    std::optional<double> gamma;
    int retries = kDefaultExtractionRetries;
    std::optional<std::string> set_file;
    int subspace_dim = 2;
    int junk = 0;
    std::optional<double> eps;
    double common_factor = 1.0 / 16;
    double degree_fraction = 0.75;
    std::optional<std::string> subspace_file;
    std::optional<int> all_subspaces;
    std::optional<std::string> pfr_set_file;

    // sandwich sweep
    int corpus_size = 100;
    int n_max = 4;

    // output (not echoed into reports)
    std::string format = "json";
    std::string output = "-";
    bool timing = false;
};

namespace detail {

template <typename T>
Json optional_json(const std::optional<T> &v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace detail

/// Echo of every parameter that can influence results.
inline Json config_to_json(const ExperimentConfig &c) {
    using detail::optional_json;
    Json j;
    j["command"] = c.command;
    j["kind"] = optional_json(c.kind);
    j["n"] = c.n;
    j["noise"] = c.noise;
    j["state_file"] = optional_json(c.state_file);
    j["seed"] = optional_json(c.seed);
    j["eps1"] = c.eps1;
    j["eps2"] = c.eps2;
    j["C"] = c.C;
    j["delta"] = c.delta;
    j["m"] = optional_json(c.m);
    j["trials"] = optional_json(c.trials);
    j["exact"] = c.exact;
    j["pauli_graph"] = optional_json(c.pauli_graph);
    j["symplectic_graph"] = optional_json(c.symplectic_graph);
    j["complete"] = optional_json(c.complete);
    j["empty"] = optional_json(c.empty);
    j["cycle"] = optional_json(c.cycle);
    j["graph_file"] = optional_json(c.graph_file);
    j["labels_file"] = optional_json(c.labels_file);
    j["tol"] = c.tol;
    j["num_labels"] = c.num_labels;
    j["restarts"] = c.restarts;
    j["gamma"] = optional_json(c.gamma);
    j["retries"] = c.retries;
    j["set_file"] = optional_json(c.set_file);
    j["subspace_dim"] = c.subspace_dim;
    j["junk"] = c.junk;
    j["eps"] = optional_json(c.eps);
    j["common_factor"] = c.common_factor;
    j["degree_fraction"] = c.degree_fraction;
    j["subspace_file"] = optional_json(c.subspace_file);
    j["all_subspaces"] = optional_json(c.all_subspaces);
    j["pfr_set_file"] = optional_json(c.pfr_set_file);
    j["corpus_size"] = c.corpus_size;
    j["n_max"] = c.n_max;
    return j;
}

/// Range checks shared by every command.
inline void validate_config(const ExperimentConfig &c) {
    using detail::require;
    const auto &cmds = experiment_commands();
    require(std::find(cmds.begin(), cmds.end(), c.command) != cmds.end(), "unknown command '" + c.command + "'");
    require(c.n >= 1, "--n must be at least 1");
    detail::check_state_qubits(c.n);
    require(c.noise >= 0 && c.noise <= 1, "--noise must lie in [0, 1]");
    require(c.eps1 > 0 && c.eps1 <= 1, "--eps1 must lie in (0, 1]");
    require(c.eps2 >= 0 && c.eps2 < 1, "--eps2 must lie in [0, 1)");
    require(c.C > 0, "--C must be positive");
    require(c.delta > 0 && c.delta < 1, "--delta must lie in (0, 1)");
    require(!c.m || *c.m >= 1, "--m must be at least 1");
    require(!c.trials || *c.trials >= 1, "--trials must be at least 1");
    require(c.tol >= 1e-8 && c.tol <= 1e-3, "--tol must lie in [1e-8, 1e-3]");
    require(c.num_labels >= 1, "--num-labels must be at least 1");
    require(c.restarts >= 1, "--restarts must be at least 1");
    require(!c.gamma || *c.gamma > 0, "--gamma must be positive");
    require(c.retries >= 1, "--retries must be at least 1");
    require(c.subspace_dim >= 0, "--subspace-dim must be non-negative");
    require(c.junk >= 0, "--junk must be non-negative");
    require(!c.eps || (*c.eps > 0 && *c.eps <= 1), "--eps must lie in (0, 1]");
    require(c.common_factor > 0, "--common-factor must be positive");
    require(c.degree_fraction > 0 && c.degree_fraction <= 1, "--degree-fraction must lie in (0, 1]");
    require(c.corpus_size >= 0, "--corpus-size must be non-negative");
    require(c.n_max >= 1 && c.n_max <= kMaxOracleQubits, "--n-max must lie in [1, 4]");
    require(c.format == "json" || c.format == "csv", "--format must be json or csv");
}

struct Report {
    std::string command;
    Json config;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;  // aligned with columns
    Json summary = Json::object();
    std::optional<double> wall_clock_seconds;
};

/// Worker count: STABKIT_THREADS if set to a positive integer, else the
/// hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("STABKIT_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<unsigned>(v);
        }
    }
    return hw;
}

/// out[i] = fn(i) for i < count, evaluated on up to worker_count() threads.
/// Results do not depend on scheduling; the exception of the smallest failing
/// index is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)> &fn) {
    std::vector<std::optional<T>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(count, 1)));
    std::mutex mu;
    std::size_t next = 0;
    auto work = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(mu);
                if (next >= count) {
                    return;
                }
                i = next++;
            }
            try {
                slots[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<T> out;
    out.reserve(count);
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

namespace detail {

inline std::uint64_t require_seed(const ExperimentConfig &c, const std::string &why) {
    if (!c.seed) {
        throw InvalidArgument("--seed is required: " + why);
    }
    return *c.seed;
}

inline bool state_is_random(const ExperimentConfig &c) {
    return !c.state_file && c.kind && parse_state_kind(*c.kind) != StateKind::t_tensor;
}

inline PureState load_state(const ExperimentConfig &c) {
    if (c.state_file) {
        return io::read_state_file(*c.state_file);
    }
    if (!c.kind) {
        throw InvalidArgument("one of --kind or --state-file is required");
    }
    const StateKind kind = parse_state_kind(*c.kind);
    const std::uint64_t seed = kind == StateKind::t_tensor ? 0 : require_seed(c, "state kind " + *c.kind + " is random");
    return generate_state({kind, c.n, seed, c.noise});
}

inline Json plan_json(const TestPlan &p) {
    return {{"eps1", p.eps1}, {"eps2", p.eps2}, {"C", p.C},         {"delta", p.delta},
            {"D1", p.D1},     {"D2", p.D2},     {"D", p.D},         {"alpha", p.alpha},
            {"m", p.m},       {"half_gap", p.half_gap}};
}

inline Json labels_json(const std::vector<WeylLabel> &labels) {
    Json out = Json::array();
    for (const auto &l : labels) {
        out.push_back(l.str());
    }
    return out;
}

inline Json set_json(const GF2Set &s) {
    Json out = Json::array();
    for (auto x : s.members()) {
        out.push_back(WeylLabel(s.n(), x).str());
    }
    return out;
}

inline void run_test(const ExperimentConfig &c, Report &r) {
    const PureState state = load_state(c);
    const std::uint64_t seed = require_seed(c, "the tester samples");
    TestPlan plan = plan_test(c.eps1, c.eps2, c.C, c.delta);
    if (c.m) {
        plan = with_sample_count(plan, *c.m);
    }
    const BellSampler sampler(state);
    const int trials = c.trials.value_or(1);
    r.columns = {"trial", "decision", "gamma_bar", "m"};
    int close = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(substream_seed(seed, static_cast<std::uint64_t>(t)));
        const auto out = run_tolerant_test(sampler, plan, rng);
        close += out.decision == Decision::Close;
        r.rows.push_back({t, to_string(out.decision), out.gamma_bar, out.m_used});
    }
    r.summary["plan"] = plan_json(plan);
    r.summary["close"] = close;
    r.summary["far"] = trials - close;
    r.summary["decision"] = 2 * close >= trials ? "Close" : "Far";
    if (state.n() <= kMaxTableQubits) {
        r.summary["gamma_exact"] = gamma_exact(state);
    }
}

inline void run_gamma(const ExperimentConfig &c, Report &r) {
    const PureState state = load_state(c);
    if (c.exact) {
        r.summary["method"] = "exact";
        r.summary["gamma"] = gamma_exact(state);
        return;
    }
    const std::uint64_t seed = require_seed(c, "sampled gamma");
    const std::int64_t m = c.m.value_or(10000);
    Rng rng(substream_seed(seed, 0));
    const auto est = estimate_gamma(state, m, rng);
    r.summary["method"] = "sampled";
    r.summary["gamma"] = est.gamma_bar;
    r.summary["accepts"] = est.accepts;
    r.summary["rounds"] = est.rounds;
}

inline void run_fidelity(const ExperimentConfig &c, Report &r) {
    const PureState state = load_state(c);
    const auto rep = stabilizer_fidelity_exact(state);
    const double gamma = gamma_exact(state);
    const double upper = std::pow(gamma, 1.0 / 6);
    r.summary["f_s"] = rep.f_s;
    r.summary["gamma"] = gamma;
    r.summary["gamma_to_sixth"] = upper;
    r.summary["argmax_lagrangian"] = labels_json(rep.argmax_lagrangian.basis());
    r.summary["argmax_character"] = rep.argmax_character;
    r.summary["lagrangians"] = rep.lagrangian_masses.size();
    if (rep.f_s > upper + 1e-9) {
        throw CertificateViolation("fidelity: F_S = " + std::to_string(rep.f_s) + " exceeds gamma^(1/6) = " +
                                   std::to_string(upper));
    }
}

struct SweepRow {
    std::string id;
    int n = 1;
    double gamma = 0;
    double f_s = 0;
};

/// Corpus of 3 * corpus_size states: Haar, noisy stabilizer (noise cycling
/// through 0.05, 0.10, ..., 0.50) and stabilizer, n cycling through 1..n_max.
inline std::vector<StateSpec> sweep_corpus(int corpus_size, int n_max, std::uint64_t seed) {
    std::vector<StateSpec> out;
    const StateKind kinds[] = {StateKind::haar, StateKind::noisy_stabilizer, StateKind::stabilizer};
    std::uint64_t index = 0;
    for (StateKind kind : kinds) {
        for (int i = 0; i < corpus_size; ++i, ++index) {
            const double noise = kind == StateKind::noisy_stabilizer ? 0.05 * (1 + i % 10) : 0.0;
            out.push_back({kind, 1 + i % n_max, substream_seed(seed, index), noise});
        }
    }
    return out;
}

inline void run_sandwich_sweep(const ExperimentConfig &c, Report &r) {
    const std::uint64_t seed = require_seed(c, "the corpus is random");
    const auto corpus = sweep_corpus(c.corpus_size, c.n_max, seed);
    const auto rows = parallel_map<SweepRow>(corpus.size(), [&](std::size_t i) {
        const PureState s = generate_state(corpus[i]);
        char id[64];
        std::snprintf(id, sizeof id, "%s-%04zu", to_string(corpus[i].kind).c_str(), i);
        return SweepRow{id, corpus[i].n, gamma_exact(s), stabilizer_fidelity_exact(s).f_s};
    });
    r.columns = {"state_id", "n", "gamma", "f_s", "gamma_to_sixth", "ratio_f_over_g112"};
    int violations = 0;
    double max_excess = -1;
    double min_ratio = 0;
    for (const auto &row : rows) {
        const double upper = std::pow(row.gamma, 1.0 / 6);
        const double ratio = row.f_s / std::pow(row.gamma, 112);
        max_excess = std::max(max_excess, row.f_s - upper);
        min_ratio = r.rows.empty() ? ratio : std::min(min_ratio, ratio);
        violations += row.f_s > upper + 1e-9;
        r.rows.push_back({row.id, row.n, row.gamma, row.f_s, upper, ratio});
    }
    r.summary["states"] = rows.size();
    r.summary["violations"] = violations;
    r.summary["max_f_minus_gamma_to_sixth"] = rows.empty() ? Json(nullptr) : Json(max_excess);
    r.summary["min_ratio_f_over_g112"] = rows.empty() ? Json(nullptr) : Json(min_ratio);
    if (violations > 0) {
        throw CertificateViolation("sandwich-sweep: " + std::to_string(violations) +
                                   " states have F_S above gamma^(1/6)");
    }
}

inline SimpleGraph theta_graph(const ExperimentConfig &c, std::string &source) {
    std::vector<SimpleGraph> found;
    if (c.pauli_graph) {
        found.push_back(pauli_group_graph(*c.pauli_graph));
        source = "pauli_graph";
    }
    if (c.symplectic_graph) {
        found.push_back(symplectic_graph(*c.symplectic_graph));
        source = "symplectic_graph";
    }
    if (c.complete) {
        found.push_back(SimpleGraph::complete(*c.complete));
        source = "complete";
    }
    if (c.empty) {
        found.push_back(SimpleGraph::empty(*c.empty));
        source = "empty";
    }
    if (c.cycle) {
        found.push_back(SimpleGraph::cycle(*c.cycle));
        source = "cycle";
    }
    if (c.graph_file) {
        found.push_back(io::read_graph_file(*c.graph_file));
        source = "graph_file";
    }
    if (c.labels_file) {
        found.push_back(anticommutation_graph(io::read_labels_file(*c.labels_file)));
        source = "labels_file";
    }
    if (found.size() != 1) {
        throw InvalidArgument("theta: give exactly one graph source");
    }
    return found.front();
}

inline void run_theta(const ExperimentConfig &c, Report &r) {
    std::string source;
    const SimpleGraph g = theta_graph(c, source);
    const auto res = lovasz_theta(g, c.tol);
    r.summary["source"] = source;
    r.summary["order"] = g.order();
    r.summary["edges"] = g.edge_count();
    r.summary["theta"] = res.value;
    r.summary["upper_bound"] = res.upper_bound;
    r.summary["iterations"] = res.iterations;
    r.summary["solver"] = res.method;
    r.summary["psd_violation"] = res.residuals.psd_violation;
    r.summary["trace_gap"] = res.residuals.trace_gap;
    r.summary["edge_violation"] = res.residuals.edge_violation;
}

/// `count` distinct non-identity labels on n qubits.
inline std::vector<WeylLabel> random_labels(int n, int count, Rng &rng) {
    const std::uint64_t universe = std::uint64_t{1} << (2 * n);
    detail::require(static_cast<std::uint64_t>(count) < universe, "random_labels: more labels than non-identity Weyl operators");
    std::set<std::uint64_t> seen;
    std::vector<WeylLabel> out;
    while (out.size() < static_cast<std::size_t>(count)) {
        const std::uint64_t x = 1 + uniform_index(rng, universe - 1);
        if (seen.insert(x).second) {
            out.emplace_back(n, x);
        }
    }
    return out;
}

inline void run_uncertainty(const ExperimentConfig &c, Report &r) {
    const int trials = c.trials.value_or(1);
    std::optional<std::vector<WeylLabel>> fixed_labels;
    if (c.labels_file) {
        fixed_labels = io::read_labels_file(*c.labels_file);
    }
    std::optional<PureState> fixed_state;
    if (!state_is_random(c)) {
        fixed_state = load_state(c);
    }
    const std::uint64_t seed = require_seed(c, "the Psi0 search uses random restarts");
    Psi0Options opts;
    opts.restarts = c.restarts;
    r.columns = {"trial", "labels", "lhs", "psi0_lb", "theta", "theta_ub"};
    double max_gap = 0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = substream_seed(seed, static_cast<std::uint64_t>(t));
        const PureState state = fixed_state ? *fixed_state
                                            : generate_state({parse_state_kind(*c.kind), c.n, substream_seed(trial_seed, 0), c.noise});
        Rng rng(substream_seed(trial_seed, 1));
        const auto labels = fixed_labels ? *fixed_labels : random_labels(state.n(), c.num_labels, rng);
        const auto cert = uncertainty_certificate(state, labels, c.tol, opts, rng);
        max_gap = std::max(max_gap, cert.psi0_lb - cert.theta_ub);
        r.rows.push_back({t, labels_json(labels), cert.lhs, cert.psi0_lb, cert.theta_value, cert.theta_ub});
    }
    r.summary["trials"] = trials;
    r.summary["max_psi0_minus_theta"] = max_gap;
}

inline void run_extract(const ExperimentConfig &c, Report &r) {
    const PureState state = load_state(c);
    const std::uint64_t seed = require_seed(c, "extraction samples subsets");
    const double gamma = c.gamma.value_or(gamma_exact(state));
    Rng rng(substream_seed(seed, 0));
    const auto rep = extract_nearly_linear_set(state, gamma, rng, c.retries);
    r.summary["gamma"] = gamma;
    r.summary["gamma_warning"] = rep.gamma_warning;
    r.summary["candidates"] = rep.candidates;
    r.summary["success"] = rep.success;
    r.summary["attempts"] = rep.attempts;
    r.summary["size"] = rep.size;
    r.summary["size_goal"] = gamma / 2 * std::ldexp(1.0, state.n());
    r.summary["min_mass"] = rep.min_mass;
    r.summary["min_mass_floor"] = gamma / 4;
    r.summary["closure_prob"] = rep.closure_prob;
    r.summary["closure_goal"] = gamma / 6;
    r.summary["set"] = set_json(rep.set);
    if (!rep.set.empty() && rep.min_mass < gamma / 4) {
        throw CertificateViolation("extract: a member has mass below gamma/4");
    }
}

inline void run_bsg(const ExperimentConfig &c, Report &r) {
    const std::uint64_t seed = require_seed(c, "BSG draws random shifts");
    std::optional<GF2Set> s;
    if (c.set_file) {
        s = io::read_set_file(*c.set_file);
    } else {
        Rng gen(substream_seed(seed, 0));
        s = structured_set(c.n, c.subspace_dim, c.junk, gen);
    }
    const double closure = closure_probability(*s);
    const double eps = c.eps.value_or(closure);
    BsgOptions opts;
    opts.trials = c.trials.value_or(opts.trials);
    opts.common_factor = c.common_factor;
    opts.degree_fraction = c.degree_fraction;
    Rng rng(substream_seed(seed, 1));
    const auto res = bsg_extract(*s, eps, rng, opts);
    r.summary["set_size"] = s->size();
    r.summary["closure_prob"] = closure;
    r.summary["eps"] = eps;
    r.summary["accepted"] = res.accepted;
    r.summary["trials_used"] = res.trials_used;
    r.summary["z_used"] = res.z_used.str();
    r.summary["s_prime_size"] = res.s_prime.size();
    r.summary["size_bound"] = bsg_size_bound(eps, s->size());
    r.summary["doubling"] = res.doubling;
    r.summary["doubling_bound"] = bsg_doubling_bound(eps);
    r.summary["b_size"] = res.stats.b_size;
    r.summary["edge_density"] = res.stats.edge_density;
    r.summary["degree_histogram"] = res.stats.degree_histogram;
    r.summary["s_prime"] = set_json(res.s_prime);
    if (res.accepted && (static_cast<double>(res.s_prime.size()) < bsg_size_bound(eps, s->size()) ||
                         res.doubling > bsg_doubling_bound(eps))) {
        throw CertificateViolation("bsg: accepted set violates its bounds");
    }
}

/// Throws CertificateViolation unless `parts` is an isotropic cover of v with
/// at most 2^k + 1 parts whose union is exactly v.
inline void check_isotropic_cover(const GF2Subspace &v, const std::vector<GF2Subspace> &parts) {
    const std::uint64_t bound = (std::uint64_t{1} << v.hyperbolic_rank()) + 1;
    if (parts.size() > bound) {
        throw CertificateViolation("cover: " + std::to_string(parts.size()) + " parts exceed 2^k + 1");
    }
    std::set<std::uint64_t> covered;
    for (const auto &p : parts) {
        if (!p.is_isotropic() || !p.is_subspace_of(v)) {
            throw CertificateViolation("cover: a part is not an isotropic subspace of V");
        }
        p.for_each_element([&](std::uint64_t x, std::uint64_t) { covered.insert(x); });
    }
    if (covered.size() != v.size()) {
        throw CertificateViolation("cover: parts do not cover V");
    }
}

inline Json cover_parts_json(const std::vector<GF2Subspace> &parts) {
    Json part_bases = Json::array();
    for (const auto &p : parts) {
        part_bases.push_back(labels_json(p.basis()));
    }
    return part_bases;
}

inline void run_cover(const ExperimentConfig &c, Report &r) {
    if (c.pfr_set_file) {
        const GF2Set s = io::read_set_file(*c.pfr_set_file);
        const auto res = pfr_cover_search(s);
        r.summary["set_size"] = s.size();
        r.summary["doubling"] = res.doubling;
        r.summary["pfr_bound"] = res.pfr_bound;
        r.summary["subspace"] = labels_json(res.subspace.basis());
        r.summary["translates"] = labels_json(res.translates);
        return;
    }
    std::vector<GF2Subspace> subspaces;
    if (c.subspace_file) {
        subspaces.push_back(io::read_subspace_file(*c.subspace_file));
    } else if (c.all_subspaces) {
        const int n = *c.all_subspaces;
        detail::require(n >= 1 && n <= 3, "--all-subspaces must lie in [1, 3]");
        for (int d = 0; d <= 2 * n; ++d) {
            for_each_subspace(n, d, [&](const GF2Subspace &v) { subspaces.push_back(v); });
        }
    } else {
        throw InvalidArgument("cover: give --subspace-file, --all-subspaces or --pfr-set-file");
    }
    r.columns = {"subspace", "dim", "k", "parts", "bound", "cover"};
    std::uint64_t max_parts = 0;
    for (const auto &v : subspaces) {
        const auto parts = isotropic_cover(v);
        check_isotropic_cover(v, parts);
        max_parts = std::max<std::uint64_t>(max_parts, parts.size());
        r.rows.push_back({labels_json(v.basis()), v.dim(), v.hyperbolic_rank(), parts.size(),
                          (std::uint64_t{1} << v.hyperbolic_rank()) + 1, cover_parts_json(parts)});
    }
    r.summary["subspaces"] = subspaces.size();
    r.summary["max_parts"] = max_parts;
}

}  // namespace detail

inline Report run_experiment(const ExperimentConfig &config) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.command = config.command;
    r.config = config_to_json(config);
    const std::string &cmd = config.command;
    if (cmd == "test") {
        detail::run_test(config, r);
    } else if (cmd == "gamma") {
        detail::run_gamma(config, r);
    } else if (cmd == "fidelity") {
        detail::run_fidelity(config, r);
    } else if (cmd == "sandwich-sweep") {
        detail::run_sandwich_sweep(config, r);
    } else if (cmd == "theta") {
        detail::run_theta(config, r);
    } else if (cmd == "uncertainty") {
        detail::run_uncertainty(config, r);
    } else if (cmd == "extract") {
        detail::run_extract(config, r);
    } else if (cmd == "bsg") {
        detail::run_bsg(config, r);
    } else {
        detail::run_cover(config, r);
    }
    if (config.timing) {
        r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

inline Json report_to_json(const Report &r) {
    Json j;
    j["command"] = r.command;
    j["config"] = r.config;
    j["summary"] = r.summary;
    Json trials = Json::array();
    for (const auto &row : r.rows) {
        Json obj;
        for (std::size_t i = 0; i < r.columns.size(); ++i) {
            obj[r.columns[i]] = row[i];
        }
        trials.push_back(std::move(obj));
    }
    j["trials"] = std::move(trials);
    if (r.wall_clock_seconds) {
        j["wall_clock_seconds"] = *r.wall_clock_seconds;
    }
    return j;
}

namespace detail {

inline std::string csv_field(const Json &v) {
    std::string text;
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_string()) {
        text = v.get<std::string>();
    } else if (v.is_null()) {
        return "";
    } else {
        text = v.dump();
    }
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    return quoted + '"';
}

}  // namespace detail

/// JSON: one object. CSV: a header of the trial columns and one row per trial.
inline std::string format_report(const Report &r, const std::string &format) {
    if (format == "json") {
        return report_to_json(r).dump(2) + "\n";
    }
    detail::require(format == "csv", "format must be json or csv");
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        out += (i ? "," : "") + detail::csv_field(r.columns[i]);
    }
    out += '\n';
    for (const auto &row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + detail::csv_field(row[i]);
        }
        out += '\n';
    }
    return out;
}

/// Writes the report to `path`, or to stdout when path is "-".
inline void emit_report(const Report &r, const std::string &format, const std::string &path) {
    const std::string text = format_report(r, format);
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write report to '" + path + "'");
    }
}

}  // namespace stabkit

#endif  // STABKIT_EXPERIMENT_HPP_
