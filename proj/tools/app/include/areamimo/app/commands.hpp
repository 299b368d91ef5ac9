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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "areamimo/app/config.hpp"
#include "areamimo/error.hpp"
#include "areamimo/table.hpp"

namespace areamimo::app
{

struct CommandContext
{
    std::filesystem::path out_dir;
    std::optional<std::filesystem::path> map_override; ///< --map
    unsigned threads = 1;
    std::ostream *log = nullptr; ///< human-readable progress; may be null
};

/// A sweep cell failed. Carries the cause (same kind and message) and the
/// rows that did complete, in output order.
class SweepAborted : public Error
{
public:
    SweepAborted(const Error &cause, ResultTable completed, std::size_t done, std::size_t total)
        : Error(cause), completed_(std::move(completed)), done_(done), total_(total)
    {
    }

    const ResultTable &completed() const noexcept { return completed_; }
    std::size_t done() const noexcept { return done_; }
    std::size_t total() const noexcept { return total_; }

private:
    ResultTable completed_;
    std::size_t done_;
    std::size_t total_;
};

/// Writes map.meta.json / map.payload.bin.
void cmd_synth(const ExperimentConfig &config, const CommandContext &ctx);
/// Writes regions.csv and regions_summary.json.
void cmd_detect(const ExperimentConfig &config, const CommandContext &ctx);
/// Writes clusters.csv, centroids.*, cluster_reports.csv, cluster_summary.json.
void cmd_cluster(const ExperimentConfig &config, const CommandContext &ctx);
/// Writes sweep.csv (and clusters/M<M>_k<k>_seed<s>.csv when enabled).
void cmd_sweep(const ExperimentConfig &config, const CommandContext &ctx);
/// Writes energymap.csv and energymap_summary.json.
void cmd_energymap(const ExperimentConfig &config, const CommandContext &ctx);
/// Checks the config and any referenced map file; writes nothing.
void cmd_validate(const ExperimentConfig &config, const CommandContext &ctx);

/// The full (M, k, q, mode, seed) sweep as a table in lexicographic order of
/// those keys. `threads` changes speed only. When `cluster_dir` is set, one
/// clustering CSV per (M, k, seed) is written there.
ResultTable run_sweep(const ExperimentConfig &config, const std::optional<std::filesystem::path> &map_override,
                      unsigned threads, const std::optional<std::filesystem::path> &cluster_dir = std::nullopt);

/// 2 config, 3 data, 4 numerical.
int exit_code(ErrorCategory category) noexcept;

/// Entry point of the areamimo executable.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace areamimo::app
