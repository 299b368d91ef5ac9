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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "areamimo/channel_map.hpp"
#include "areamimo/clustering.hpp"
#include "areamimo/rate_eval.hpp"
#include "areamimo/region_detect.hpp"

namespace areamimo::app
{

enum class Scenario
{
    los,
    nlos,
    mixed,
    file
};

const char *to_string(Scenario s) noexcept;

/// 10, 15, ..., 120.
std::vector<std::size_t> default_k_sweep();

/// Declarative experiment description read from one JSON file.
///
/// Every field is optional. Defaults that depend on the scenario:
///   antennas      64 for nlos/file, 16 for los/mixed
///   array.standoff_m  0.1 for los, 1.0 for mixed
///   nlos.alpha    1.0, or "los-matched" for mixed
/// Unknown keys are rejected so that typos surface as config errors.
struct ExperimentConfig
{
    Scenario scenario = Scenario::nlos;
    std::optional<std::filesystem::path> map_file;
    std::filesystem::path output_dir = "out";

    double fc_hz = 2.4e9;
    std::size_t antennas = 64;

    GridSpec grid{49, 25, 0.05, 0.0, 0.0}; ///< los scenario only

    std::optional<double> array_spacing_m; ///< default lambda / 2
    double array_standoff_m = 0.1;
    std::optional<std::vector<Point2>> array_positions;

    std::size_t nlos_sx = 7, nlos_sy = 7, nlos_L = 20;
    bool alpha_los_matched = false;
    double alpha = 1.0;
    double sigma2 = 1.0;
    std::uint64_t nlos_seed = 0;

    std::size_t mixed_i_above = 60;
    std::size_t mixed_j_above = 90;

    RankPolicy rank_policy;
    std::size_t detect_num_seeds = 30;
    double eta_threshold = 0.5;
    std::uint64_t detect_seed = 0;

    std::size_t cluster_k = 49;
    KMeansInit cluster_init = KMeansInit::random;
    std::size_t cluster_max_iters = 300;
    std::uint64_t cluster_seed = 0;

    SirOptions sir;
    std::vector<double> q_percent{50.0};
    std::vector<PercentileMode> modes{PercentileMode::literal};

    std::vector<std::size_t> sweep_k = default_k_sweep();
    std::vector<std::size_t> sweep_M; ///< defaults to {antennas}
    std::vector<std::uint64_t> sweep_seeds{0};
    bool sweep_resynthesize = true;
    bool sweep_write_clusters = false;

    std::optional<Point2> target_m{Point2{1.2, 0.4}};
    std::optional<Cell> target_cell;

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// Replaces every seed (synthesis, detection, clustering, sweep list).
    void override_seed(std::uint64_t seed);
};

/// Parses and validates; throws ConfigError.
ExperimentConfig parse_config(const std::string &json_text);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Fully defaulted configuration as canonical JSON (sorted keys, 2-space indent).
std::string to_json(const ExperimentConfig &config);

/// Builds the configured synthetic map with the given synthesis seed and
/// antenna count. Throws ConfigError for scenario file.
ChannelMap build_map(const ExperimentConfig &config, std::uint64_t seed, std::size_t antennas);

/// The map a command operates on: `map_override` if given, else the map file
/// of a file scenario, else the synthesized map for `config.nlos_seed`.
ChannelMap resolve_map(const ExperimentConfig &config, const std::optional<std::filesystem::path> &map_override);

/// Region predicate of the mixed scenario.
RegionPredicate mixed_predicate(const ExperimentConfig &config);

} // namespace areamimo::app
