// SPDX-License-Identifier: Apache-2.0
//
// areamimo: area-throughput evaluation of spatially consistent massive MIMO channels
// Copyright (C) 2026 The areamimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <CLI11.hpp>

#include <functional>
#include <ostream>

#include "areamimo/app/commands.hpp"

namespace areamimo::app
{

namespace
{

struct Options
{
    std::string config;
    std::string out;
    std::string map;
    std::uint64_t seed_override = 0;
    unsigned threads = 1;
};

using Command = std::function<void(const ExperimentConfig &, const CommandContext &)>;

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Area-throughput evaluation of spatially consistent massive MIMO channel maps", "areamimo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "areamimo 0.1.0");

    Options opt;
    const std::vector<std::pair<std::string, std::pair<std::string, Command>>> commands = {
        {"synth", {"Synthesize the configured channel map", cmd_synth}},
        {"detect", {"Detect LoS/NLoS regions by rank-limited spiral growth", cmd_detect}},
        {"cluster", {"Run k-means and evaluate MR-precoded rates", cmd_cluster}},
        {"sweep", {"Sweep cluster count, antenna count, percentile and seed", cmd_sweep}},
        {"energymap", {"Received energy map under MR precoding towards a target", cmd_energymap}},
        {"validate", {"Lint a config and any referenced map file", cmd_validate}},
    };
    std::map<std::string, CLI::Option *> seed_flags;
    for (const auto &[name, entry] : commands)
    {
        CLI::App *sub = app.add_subcommand(name, entry.first);
        sub->add_option("--config", opt.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Output directory (overrides output_dir)");
        if (name != "synth")
            sub->add_option("--map", opt.map, "Channel map to use instead of the configured scenario");
        seed_flags[name] = sub->add_option("--seed-override", opt.seed_override, "Replace every seed in the config");
        sub->add_option("--threads", opt.threads, "Worker threads (speed only)")->check(CLI::Range(1u, 1024u));
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    for (const auto &[name, entry] : commands)
    {
        const CLI::App *sub = app.get_subcommand(name);
        if (!sub->parsed())
            continue;
        try
        {
            ExperimentConfig config = load_config(opt.config);
            if (seed_flags[name]->count() > 0)
                config.override_seed(opt.seed_override);
            CommandContext ctx;
            ctx.out_dir = opt.out.empty() ? config.output_dir : std::filesystem::path(opt.out);
            if (!opt.map.empty())
                ctx.map_override = opt.map;
            ctx.threads = opt.threads;
            ctx.log = &out;
            entry.second(config, ctx);
            return 0;
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_code(e.category());
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_code(ErrorCategory::data);
        }
    }
    return 2;
}

} // namespace areamimo::app
