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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "areamimo/channel_map.hpp"
#include "areamimo/channel_synth.hpp"
#include "areamimo/table.hpp"

namespace areamimo
{

struct RankPolicy
{
    double power_fraction = 0.01; ///< share of total singular-value power a value must exceed
    std::size_t rank_limit = 1;   ///< largest rank a region may reach

    void validate() const;
};

/// Number of entries p_i with p_i > fraction * sum(p). Zero when the sum is 0.
std::size_t count_significant(std::span<const double> powers, double fraction);

/// Effective rank of an n x M matrix: singular values whose squares exceed
/// `power_fraction` of the summed squares. Throws NumericalFailure if the
/// SVD fails and InvalidParams for empty or non-finite input.
std::size_t effective_rank(const CMatrix &h, const RankPolicy &policy);

/// Effective rank of a growing row set without refactorizing for every
/// candidate row.
///
/// Keeps the Gram matrix G = H^H H with its eigendecomposition. The squared
/// singular values of H are the eigenvalues of G. For a candidate row h and
/// threshold t = fraction * (trace G + |h|^2), the count of eigenvalues of
/// G + h^H h above t is (count of eigenvalues of G above t) + [z^H D^-1 z < -1]
/// with z = V^H h^H and D = diag(lambda - t) (Haynsworth inertia additivity).
/// Degenerate cases fall back to a direct eigensolve.
class RankTracker
{
public:
    RankTracker(std::size_t antennas, double power_fraction);

    /// Effective rank after hypothetically appending `row`; O(M^2).
    std::size_t rank_with(const Eigen::Ref<const CRowVector> &row) const;
    /// Appends `row`; refactorizes G in O(M^3).
    void add(const Eigen::Ref<const CRowVector> &row);

    std::size_t rank() const;
    std::size_t rows() const noexcept { return rows_; }

private:
    void refactor();

    double fraction_;
    Eigen::MatrixXcd gram_;
    Eigen::MatrixXcd vectors_;
    Eigen::VectorXd values_;
    double total_ = 0.0;
    std::size_t rows_ = 0;
};

/// Occupancy mask over a grid (claimed cells).
class CellMask
{
public:
    explicit CellMask(const GridSpec &grid) : ny_(grid.ny), bits_(grid.cell_count(), 0) {}

    bool test(Cell c) const { return bits_[c.i * ny_ + c.j] != 0; }
    void set(Cell c) { bits_[c.i * ny_ + c.j] = 1; }
    std::size_t count() const;

private:
    std::size_t ny_;
    std::vector<std::uint8_t> bits_;
};

struct ShapeMetrics
{
    double area_m2 = 0.0;
    double perimeter_m = 0.0;
    double eta = 0.0;
};

/// Area = |cells| delta^2, perimeter = delta * number of unit edges between
/// a member and a non-member 4-neighbour, eta = clamp(4 pi A / P^2, 0, 1).
/// Duplicate cells are counted once. Throws InvalidParams for an empty set.
ShapeMetrics shape_metrics(std::span<const Cell> cells, double delta);
double circularity(std::span<const Cell> cells, double delta);

/// (di, dj) offsets of the Chebyshev ring of radius r >= 1 in traversal
/// order: start due east at (r, 0), then counter-clockwise (north along
/// di = r, west along dj = r, south along di = -r, east along dj = -r, and
/// north again back to (r, -1)). 8r entries.
std::vector<std::pair<long, long>> spiral_ring(std::size_t r);

struct Region
{
    std::vector<Cell> cells; ///< acceptance order; cells.front() == seed_cell
    Cell seed_cell;
    std::size_t final_radius = 0; ///< radius of the terminating (empty) ring
    double area_m2 = 0.0;
    double perimeter_m = 0.0;
    double eta = 0.0;
};

/// Grows a rank-coherent region around `seed` by an outward square spiral.
/// Each unclaimed in-bounds cell is tentatively appended; it stays only if
/// the effective rank remains <= rank_limit. Stops after the first ring that
/// adds no cell. Throws OutOfBounds or SeedClaimed for a bad seed.
Region spiral_grow(const ChannelMap &map, Cell seed, const RankPolicy &policy, const CellMask &claimed);

struct RegionSet
{
    std::vector<Region> regions;
    std::vector<Propagation> labels; ///< NLoS when eta >= eta_threshold
    double eta_threshold = 0.5;
};

/// Draws `num_seeds` seeds one at a time, uniformly among cells not yet
/// claimed, and grows each region in draw order; grown cells become claimed.
/// Throws InsufficientUnclaimedCells when the map is exhausted early.
RegionSet detect_regions(const ChannelMap &map, std::size_t num_seeds, const RankPolicy &policy,
                         double eta_threshold, std::uint64_t seed);

/// Columns: cell_i, cell_j, region_id, label.
ResultTable region_cells_table(const RegionSet &set);
/// Per-region area, perimeter, eta, label plus per-label eta statistics.
std::string region_summary_json(const RegionSet &set);

const char *to_string(Propagation p) noexcept;

} // namespace areamimo
