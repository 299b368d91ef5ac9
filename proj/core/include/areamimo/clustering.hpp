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
#include <optional>
#include <span>
#include <vector>

#include "areamimo/channel_map.hpp"
#include "areamimo/table.hpp"

namespace areamimo
{

enum class KMeansInit
{
    random,    ///< k distinct positions drawn uniformly
    plus_plus  ///< D^2-weighted seeding (k-means++)
};

const char *to_string(KMeansInit init) noexcept;
/// Accepts "random" and "plusplus"; throws InvalidParams otherwise.
KMeansInit kmeans_init_from_string(const std::string &name);

struct KMeansOptions
{
    std::size_t k = 2;
    std::uint64_t seed = 0;
    std::size_t max_iters = 300;
    KMeansInit init = KMeansInit::random;
    /// Explicit initial centroid positions (indices into the clustered
    /// positions); overrides `init` when set. Must hold k distinct indices.
    std::optional<std::vector<std::size_t>> initial_indices;
};

struct Clustering
{
    std::size_t k = 0;
    std::vector<std::uint32_t> assignment; ///< per clustered position, in [0, k)
    CMatrix centroids;                     ///< k x M
    std::size_t iterations = 0;            ///< update steps performed
    bool converged = false;                ///< false when max_iters was hit
    std::size_t repairs = 0;               ///< empty clusters re-seeded
    std::vector<double> wcss_history;      ///< objective after every update step
    /// Map row indices that were clustered; empty means the whole map.
    std::vector<std::size_t> positions;

    std::size_t size() const noexcept { return assignment.size(); }
    /// Map row index of clustered position n.
    std::size_t map_row(std::size_t n) const noexcept { return positions.empty() ? n : positions[n]; }
    std::vector<std::size_t> cluster_sizes() const;
};

/// Lloyd iteration: assign each position to the nearest centroid (squared
/// Euclidean distance on C^M, ties to the lowest index), then replace
/// centroids by member means. Stops when an assignment repeats or after
/// max_iters update steps. A cluster left empty is re-seeded with the
/// position farthest from its own centroid, taken from a cluster with at
/// least two members.
///
/// Throws EmptyInput, KTooLarge (k > N) or InvalidParams.
Clustering kmeans(const ChannelMap &map, const KMeansOptions &options);
Clustering kmeans(const ChannelMap &map, std::span<const std::size_t> positions, const KMeansOptions &options);
/// Clusters the rows of a bare matrix.
Clustering kmeans(const CMatrix &rows, const KMeansOptions &options);

/// Sum over positions of |h_n - centroid(assignment_n)|^2, evaluated directly.
double wcss(const ChannelMap &map, const Clustering &clustering);
double wcss(const CMatrix &rows, const Clustering &clustering);

/// Columns: cell_i, cell_j, cluster_id.
ResultTable clustering_table(const ChannelMap &map, const Clustering &clustering);

} // namespace areamimo
