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

// Command-line front end: parses flags (plus an optional JSON config file),
// runs one experiment and writes its report.
//
// Exit codes: 0 success, 2 validation error, 3 certificate or invariant
// violation, 4 engine cap exceeded.

#include <iostream>
#include <string>
#include <vector>

#include "cli_options.hpp"
#include "stabkit/errors.hpp"
#include "stabkit/experiment.hpp"

int main(int argc, char **argv) {
    using namespace stabkit;
    try {
        std::vector<std::string> args = cli::merge_config_file(std::vector<std::string>(argv, argv + argc));
        ExperimentConfig config;
        CLI::App app("stabkit: tolerant stabilizer testing experiments", "stabkit");
        cli::build_app(app, config);
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        try {
            app.parse(reversed);
        } catch (const CLI::ParseError &e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }
        config.command = app.get_subcommands().front()->get_name();
        const Report report = run_experiment(config);
        emit_report(report, config.format, config.output);
        return 0;
    } catch (const CertificateViolation &e) {
        std::cerr << "certificate violation: " << e.what() << '\n';
        return 3;
    } catch (const CapExceeded &e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 4;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
