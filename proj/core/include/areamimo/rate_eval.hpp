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
#include <string>
#include <vector>

#include "areamimo/channel_map.hpp"
#include "areamimo/clustering.hpp"
#include "areamimo/table.hpp"

namespace areamimo
{

/// MR precoder: column i is the conjugate transpose of centroid i (M x k).
struct PrecodingMatrix
{
    CMatrix columns;

    std::size_t k() const noexcept { return static_cast<std::size_t>(columns.cols()); }
};

PrecodingMatrix mr_precoder(const Clustering &clustering);

struct SirOptions
{
    /// Value substituted when interference vanishes, and upper clamp.
    double cap = 1e9;
    /// Interference below underflow_ratio * signal counts as vanished.
    double underflow_ratio = 1e-30;
    /// Additive noise power in the denominator (SINR); 0 gives pure SIR.
    double noise_power = 0.0;
};

struct ClusterRates
{
    std::size_t cluster_id = 0;
    std::vector<std::size_t> members; ///< clustered-position indices
    std::vector<double> sir;          ///< linear, per member
    std::vector<double> rates;        ///< log2(1 + sir) [bpcu]
    std::vector<double> sorted_rates; ///< ascending
    std::size_t capped = 0;           ///< members whose SIR hit the cap
};

/// Per member n of cluster i:
///   SIR = |<h_n, c_i>|^2 / (sum_{j != i} |<h_n, c_j>|^2 + noise)
/// with <a, b> = sum_m a_m conj(b_m), i.e. the entries of H * P_MR.
/// Throws SingleClusterSIR when k < 2.
std::vector<ClusterRates> cluster_sir(const ChannelMap &map, const Clustering &clustering,
                                      const PrecodingMatrix &precoder, const SirOptions &options = {});

enum class PercentileMode
{
    literal, ///< ascending sort, 1-based index max(1, floor(q |S|))
    top_q    ///< same index counted from the highest rate down
};

const char *to_string(PercentileMode mode) noexcept;
/// Accepts "literal" and "top-q"; throws InvalidParams otherwise.
PercentileMode percentile_mode_from_string(const std::string &name);

/// Throws EmptyCluster for an empty cluster and InvalidParams unless 0 < q <= 1.
double percentile_rate(const ClusterRates &rates, double q, PercentileMode mode = PercentileMode::literal);

struct RateReport
{
    std::size_t k = 0;
    std::size_t M = 0;
    double q = 0.5;
    PercentileMode mode = PercentileMode::literal;
    double per_cluster_rate_bpcu = 0.0;
    double density_per_m2 = 0.0;
    double area_rate_bpcu_per_m2 = 0.0;
    std::size_t capped = 0;
};

/// Aggregates precomputed cluster rates: mean percentile rate over the k
/// clusters times D = k / (clustered cells * delta^2).
RateReport rate_report(const ChannelMap &map, const Clustering &clustering, const std::vector<ClusterRates> &rates,
                       double q, PercentileMode mode = PercentileMode::literal);

/// MR precoder, SIR and percentile aggregation in one call.
RateReport area_throughput(const ChannelMap &map, const Clustering &clustering, double q,
                           PercentileMode mode = PercentileMode::literal, const SirOptions &options = {});

/// Received energy |<h_n, h_target>|^2 at every grid position under MR
/// precoding towards the target cell. Throws OutOfBounds.
std::vector<double> energy_map(const ChannelMap &map, Cell target);
/// Target given in metres; snapped to the nearest cell.
std::vector<double> energy_map(const ChannelMap &map, const Point2 &target);

/// Sweep CSV layout: k, M, q_percent, mode, per_cluster_rate_bpcu,
/// density_per_m2, area_rate_bpcu_per_m2, seed.
ResultTable make_sweep_table();
/// `q_percent` is written as given, so configured values appear verbatim.
void append_report(ResultTable &table, const RateReport &report, double q_percent, std::uint64_t seed);

} // namespace areamimo
