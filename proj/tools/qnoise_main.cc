// Copyright 2026 The qnoise Authors
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

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qnoise/config.h"
#include "qnoise/errors.h"
#include "qnoise/pipeline.h"

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> rcond;
    std::optional<double> quality_ratio;
};

void add_common(CLI::App *cmd, CommonOptions &opts) {
    cmd->add_option("--config", opts.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--seed", opts.seed, "override the master seed");
    cmd->add_option("--out", opts.out, "output directory (overrides output_dir)");
    cmd->add_option("--rcond", opts.rcond, "relative singular-value cutoff");
    cmd->add_option("--quality-ratio", opts.quality_ratio, "reliability threshold max(Q)/Q");
}

qnoise::ExperimentConfig resolve(const CommonOptions &opts) {
    qnoise::ExperimentConfig config = qnoise::load_config(opts.config_path);
    if (opts.seed) {
        config.seed = *opts.seed;
    }
    if (opts.out) {
        config.output_dir = *opts.out;
    }
    if (opts.rcond) {
        config.reconstruction.rcond = *opts.rcond;
    }
    if (opts.quality_ratio) {
        config.reconstruction.quality_ratio = *opts.quality_ratio;
    }
    qnoise::validate(config);
    return config;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Dephasing-noise correlation spectroscopy: simulate, reconstruct, filters, oracle"};
    app.set_version_flag("--version", qnoise::kVersion);
    app.require_subcommand(1);

    CommonOptions opts;
    std::string input_dir;
    bool analytic_chi = false;

    auto *simulate = app.add_subcommand("simulate", "run the measurement chain and write shot tables");
    add_common(simulate, opts);
    auto *reconstruct = app.add_subcommand("reconstruct", "estimate C(t) from shot tables");
    add_common(reconstruct, opts);
    reconstruct->add_option("--input", input_dir, "directory holding shot CSVs (default: the output directory)");
    reconstruct->add_flag("--analytic-chi", analytic_chi, "use exact coherence integrals from the noise model");
    auto *filters = app.add_subcommand("filters", "write filter functions and overlap matrix");
    add_common(filters, opts);
    auto *oracle = app.add_subcommand("oracle", "write analytic C(t) and coherence integral tables");
    add_common(oracle, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        const qnoise::ExperimentConfig config = resolve(opts);
        const std::string &out = config.output_dir;
        if (simulate->parsed()) {
            qnoise::cmd_simulate(config, out);
        } else if (reconstruct->parsed()) {
            qnoise::cmd_reconstruct(config, input_dir.empty() ? out : input_dir, out, analytic_chi);
        } else if (filters->parsed()) {
            qnoise::cmd_filters(config, out);
        } else if (oracle->parsed()) {
            qnoise::cmd_oracle(config, out);
        }
    } catch (const qnoise::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const qnoise::DataError &e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
