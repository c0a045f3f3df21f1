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

#ifndef STABKIT_TOOLS_CLI_OPTIONS_HPP_
#define STABKIT_TOOLS_CLI_OPTIONS_HPP_

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stabkit/errors.hpp"
#include "stabkit/experiment.hpp"

namespace stabkit::cli {

namespace detail {

inline void add_state_options(CLI::App *sub, ExperimentConfig &c) {
    sub->add_option("--kind", c.kind, "state kind: stabilizer, haar, t_tensor, noisy_stabilizer");
    sub->add_option("--n", c.n, "qubit count");
    sub->add_option("--noise", c.noise, "noise weight for noisy_stabilizer");
    sub->add_option("--state-file", c.state_file, "JSON state file {n, re, im}");
    sub->add_option("--seed", c.seed, "master seed");
}

inline void add_output_options(CLI::App *sub, ExperimentConfig &c) {
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--output", c.output, "report path, - for stdout");
    sub->add_flag("--timing", c.timing, "include wall-clock seconds in the report");
}

}  // namespace detail

/// Registers every subcommand and its options; parsed values land in `c`.
/// Repeated options keep their last value.
inline void build_app(CLI::App &app, ExperimentConfig &c) {
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", "JSON config file; explicit flags override its entries");

    auto *test = app.add_subcommand("test", "tolerant stabilizer test by Bell difference sampling");
    detail::add_state_options(test, c);
    test->add_option("--eps1", c.eps1, "closeness parameter");
    test->add_option("--eps2", c.eps2, "farness parameter");
    test->add_option("--C", c.C, "constant in the farness threshold");
    test->add_option("--delta", c.delta, "failure probability");
    test->add_option("--m", c.m, "override the number of rounds");
    test->add_option("--trials", c.trials, "independent repetitions");

    auto *gamma = app.add_subcommand("gamma", "exact or sampled gamma");
    detail::add_state_options(gamma, c);
    gamma->add_flag("--exact", c.exact, "compute exactly from the Weyl distribution");
    gamma->add_option("--m", c.m, "rounds for the sampled estimate");

    auto *fidelity = app.add_subcommand("fidelity", "exact stabilizer fidelity (n <= 4)");
    detail::add_state_options(fidelity, c);

    auto *sweep = app.add_subcommand("sandwich-sweep", "F_S against gamma over a seeded corpus");
    sweep->add_option("--seed", c.seed, "master seed");
    sweep->add_option("--corpus-size", c.corpus_size, "states per class");
    sweep->add_option("--n-max", c.n_max, "largest qubit count");

    auto *theta = app.add_subcommand("theta", "Lovasz theta of a graph");
    theta->add_option("--pauli-graph", c.pauli_graph, "anticommutation graph of all k-qubit Weyl labels");
    theta->add_option("--symplectic-graph", c.symplectic_graph, "commutation graph of nonzero k-qubit labels");
    theta->add_option("--complete", c.complete, "complete graph K_N");
    theta->add_option("--empty", c.empty, "edgeless graph on N vertices");
    theta->add_option("--cycle", c.cycle, "cycle C_N");
    theta->add_option("--graph-file", c.graph_file, "graph file");
    theta->add_option("--labels-file", c.labels_file, "anticommutation graph of the listed labels");
    theta->add_option("--tol", c.tol, "solver tolerance");

    auto *unc = app.add_subcommand("uncertainty", "uncertainty chain lhs <= Psi0 <= theta");
    detail::add_state_options(unc, c);
    unc->add_option("--labels-file", c.labels_file, "fixed label set");
    unc->add_option("--num-labels", c.num_labels, "random labels per trial");
    unc->add_option("--restarts", c.restarts, "ascent restarts for Psi0");
    unc->add_option("--tol", c.tol, "theta tolerance");
    unc->add_option("--trials", c.trials, "independent trials");

    auto *extract = app.add_subcommand("extract", "nearly-linear set extraction");
    detail::add_state_options(extract, c);
    extract->add_option("--gamma", c.gamma, "gamma used for the thresholds (default: exact)");
    extract->add_option("--retries", c.retries, "retry cap");

    auto *bsg = app.add_subcommand("bsg", "Balog-Szemeredi-Gowers extraction");
    bsg->add_option("--seed", c.seed, "master seed");
    bsg->add_option("--n", c.n, "qubit count of the generated set");
    bsg->add_option("--set-file", c.set_file, "set file");
    bsg->add_option("--subspace-dim", c.subspace_dim, "dimension of the generated subspace");
    bsg->add_option("--junk", c.junk, "random points added outside the subspace");
    bsg->add_option("--eps", c.eps, "closure parameter (default: closure probability)");
    bsg->add_option("--trials", c.trials, "trial cap");
    bsg->add_option("--common-factor", c.common_factor, "edge threshold factor");
    bsg->add_option("--degree-fraction", c.degree_fraction, "degree threshold fraction");

    auto *cover = app.add_subcommand("cover", "isotropic covers of subspaces");
    cover->add_option("--subspace-file", c.subspace_file, "subspace basis file");
    cover->add_option("--all-subspaces", c.all_subspaces, "every subspace of F_2^{2n}, n <= 3");
    cover->add_option("--pfr-set-file", c.pfr_set_file, "exhaustive translate-cover search for a set (2n <= 8)");

    for (auto *sub : app.get_subcommands({})) {
        detail::add_output_options(sub, c);
        sub->add_option("--config", "JSON config file; explicit flags override its entries");
    }
}

/// Expands "--config FILE" into flag tokens placed directly after the
/// subcommand, so later explicit flags win. Keys may use '_' or '-'; true
/// booleans become bare flags and false ones are dropped.
inline std::vector<std::string> merge_config_file(std::vector<std::string> args) {
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw InvalidArgument("--config needs a file");
            }
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) {
        return rest;
    }
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) {
        throw InvalidArgument("config file must hold a JSON object");
    }
    std::vector<std::string> tokens;
    for (const auto &[key, value] : j.items()) {
        std::string flag = "--" + key;
        std::replace(flag.begin() + 2, flag.end(), '_', '-');
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                tokens.push_back(flag);
            }
        } else if (value.is_string()) {
            tokens.push_back(flag);
            tokens.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            tokens.push_back(flag);
            tokens.push_back(value.dump());
        } else {
            throw InvalidArgument("config key '" + key + "' must be a string, number or boolean");
        }
    }
    // rest[0] is the program name; the subcommand is the first token naming one.
    std::size_t at = rest.size();
    const auto &cmds = experiment_commands();
    for (std::size_t i = 1; i < rest.size(); ++i) {
        if (std::find(cmds.begin(), cmds.end(), rest[i]) != cmds.end()) {
            at = i + 1;
            break;
        }
    }
    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
    return rest;
}

}  // namespace stabkit::cli

#endif  // STABKIT_TOOLS_CLI_OPTIONS_HPP_
