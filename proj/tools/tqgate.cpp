// Copyright 2026 The tqgate Authors
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

// Command-line front end: run a JSON configuration or reproduce a built-in figure.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tqgate/cli.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Two-qubit gate fidelity simulator for weakly anharmonic superconducting qubits"};
    tqgate::CliOptions opt;
    std::string config, figure, out;
    double dt = 0.0;

    auto *config_opt = app.add_option("--config", config, "JSON run configuration");
    auto *figure_opt = app.add_option("--reproduce", figure, "Built-in figure id")
                           ->check(CLI::IsMember(tqgate::figure_ids()));
    config_opt->excludes(figure_opt);
    auto *out_opt = app.add_option("--out", out, "Output directory (overrides the config's output)");
    auto *dt_opt = app.add_option("--dt", dt, "Ramp step in ns (default 0.005)")->check(CLI::PositiveNumber);
    app.add_option("--jobs", opt.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << tqgate::diagnostic("config", e.what()) << '\n';
        return 1;
    }
    if (*config_opt) opt.config_path = config;
    if (*figure_opt) opt.figure = figure;
    if (*out_opt) opt.out_dir = out;
    if (*dt_opt) opt.dt = dt;
    return tqgate::run_cli(opt);
}
