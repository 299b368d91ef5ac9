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

#include "areamimo/region_detect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "areamimo/error.hpp"
#include "areamimo/rng.hpp"
#include "areamimo/stats.hpp"

namespace areamimo
{

void RankPolicy::validate() const
{
    if (!(power_fraction > 0.0 && power_fraction < 1.0))
        throw Error(ErrorKind::invalid_params, "power_fraction must lie in (0, 1)");
    if (rank_limit < 1)
        throw Error(ErrorKind::invalid_params, "rank_limit must be >= 1");
}

std::size_t count_significant(std::span<const double> powers, double fraction)
{
    double total = 0.0;
    for (double p : powers)
        total += p;
    if (!(total > 0.0))
        return 0;
    const double threshold = fraction * total;
    return static_cast<std::size_t>(std::count_if(powers.begin(), powers.end(), [&](double p) { return p > threshold; }));
}

std::size_t effective_rank(const CMatrix &h, const RankPolicy &policy)
{
    policy.validate();
    if (h.rows() < 1 || h.cols() < 1)
        throw Error(ErrorKind::invalid_params, "effective_rank needs a non-empty matrix");
    if (!h.allFinite())
        throw Error(ErrorKind::invalid_params, "effective_rank input has non-finite entries");

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(h);
    if (svd.info() != Eigen::Success)
        throw Error(ErrorKind::numerical_failure, "singular value decomposition did not converge");
    const Eigen::VectorXd powers = svd.singularValues().array().square();
    return count_significant({powers.data(), static_cast<std::size_t>(powers.size())}, policy.power_fraction);
}

RankTracker::RankTracker(std::size_t antennas, double power_fraction)
    : fraction_(power_fraction),
      gram_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(antennas), static_cast<Eigen::Index>(antennas))),
      vectors_(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(antennas), static_cast<Eigen::Index>(antennas))),
      values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(antennas)))
{
    if (antennas < 1)
        throw Error(ErrorKind::invalid_params, "rank tracker needs at least one antenna");
    if (!(power_fraction > 0.0 && power_fraction < 1.0))
        throw Error(ErrorKind::invalid_params, "power_fraction must lie in (0, 1)");
}

std::size_t RankTracker::rank() const
{
    return count_significant({values_.data(), static_cast<std::size_t>(values_.size())}, fraction_);
}

std::size_t RankTracker::rank_with(const Eigen::Ref<const CRowVector> &row) const
{
    const double total = total_ + row.squaredNorm();
    if (!(total > 0.0))
        return 0;
    const double t = fraction_ * total;

    const CVector z = vectors_.adjoint() * row.adjoint();
    std::size_t above = 0;
    double s = 0.0;
    bool degenerate = false;
    for (Eigen::Index i = 0; i < values_.size(); ++i)
    {
        const double d = values_(i) - t;
        if (std::abs(d) <= 1e-9 * t)
        {
            degenerate = true;
            break;
        }
        if (d > 0.0)
            ++above;
        s += std::norm(z(i)) / d;
    }
    if (!degenerate)
        return above + (s < -1.0 ? 1 : 0);

    const Eigen::MatrixXcd g = gram_ + row.adjoint() * row;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::numerical_failure, "Gram eigensolver did not converge");
    const Eigen::VectorXd &ev = es.eigenvalues();
    return static_cast<std::size_t>((ev.array() > t).count());
}

void RankTracker::add(const Eigen::Ref<const CRowVector> &row)
{
    gram_.noalias() += row.adjoint() * row;
    total_ += row.squaredNorm();
    ++rows_;
    refactor();
}

void RankTracker::refactor()
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram_);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::numerical_failure, "Gram eigensolver did not converge");
    values_ = es.eigenvalues().cwiseMax(0.0);
    vectors_ = es.eigenvectors();
}

std::size_t CellMask::count() const
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

ShapeMetrics shape_metrics(std::span<const Cell> cells, double delta)
{
    if (cells.empty())
        throw Error(ErrorKind::invalid_params, "shape metrics need a non-empty cell set");

    std::size_t imin = cells[0].i, imax = cells[0].i, jmin = cells[0].j, jmax = cells[0].j;
    for (const Cell &c : cells)
    {
        imin = std::min(imin, c.i);
        imax = std::max(imax, c.i);
        jmin = std::min(jmin, c.j);
        jmax = std::max(jmax, c.j);
    }
    // Bounding box with a one-cell margin on every side.
    const std::size_t w = imax - imin + 3;
    const std::size_t hgt = jmax - jmin + 3;
    std::vector<std::uint8_t> in(w * hgt, 0);
    auto at = [&](std::size_t a, std::size_t b) -> std::uint8_t & { return in[a * hgt + b]; };

    std::size_t count = 0;
    for (const Cell &c : cells)
    {
        auto &bit = at(c.i - imin + 1, c.j - jmin + 1);
        count += bit == 0;
        bit = 1;
    }
    std::size_t edges = 0;
    for (std::size_t a = 1; a + 1 < w; ++a)
        for (std::size_t b = 1; b + 1 < hgt; ++b)
            if (at(a, b))
                edges += (at(a - 1, b) == 0) + (at(a + 1, b) == 0) + (at(a, b - 1) == 0) + (at(a, b + 1) == 0);

    ShapeMetrics m;
    m.area_m2 = static_cast<double>(count) * delta * delta;
    m.perimeter_m = static_cast<double>(edges) * delta;
    // Ratio first: for n x n squares it is exactly 1/16.
    const double ratio = static_cast<double>(count) / (static_cast<double>(edges) * static_cast<double>(edges));
    const double raw = 4.0 * std::numbers::pi * ratio;
    m.eta = std::clamp(raw, 0.0, 1.0);
    return m;
}

double circularity(std::span<const Cell> cells, double delta)
{
    return shape_metrics(cells, delta).eta;
}

std::vector<std::pair<long, long>> spiral_ring(std::size_t radius)
{
    const long r = static_cast<long>(radius);
    std::vector<std::pair<long, long>> ring;
    if (r < 1)
        return ring;
    ring.reserve(static_cast<std::size_t>(8 * r));
    for (long dj = 0; dj <= r; ++dj)
        ring.emplace_back(r, dj);
    for (long di = r - 1; di >= -r; --di)
        ring.emplace_back(di, r);
    for (long dj = r - 1; dj >= -r; --dj)
        ring.emplace_back(-r, dj);
    for (long di = -r + 1; di <= r; ++di)
        ring.emplace_back(di, -r);
    for (long dj = -r + 1; dj <= -1; ++dj)
        ring.emplace_back(r, dj);
    return ring;
}

Region spiral_grow(const ChannelMap &map, Cell seed, const RankPolicy &policy, const CellMask &claimed)
{
    policy.validate();
    const GridSpec &grid = map.grid();
    if (!grid.contains(seed))
        throw Error(ErrorKind::out_of_bounds, "seed cell (" + std::to_string(seed.i) + ", " + std::to_string(seed.j) +
                                                  ") lies outside the grid");
    if (claimed.test(seed))
        throw Error(ErrorKind::seed_claimed, "seed cell (" + std::to_string(seed.i) + ", " + std::to_string(seed.j) +
                                                 ") is already claimed");

    RankTracker tracker(map.antennas(), policy.power_fraction);
    Region region;
    region.seed_cell = seed;
    // A single row has rank <= 1, so the seed always joins.
    tracker.add(map.row(seed));
    region.cells.push_back(seed);

    const long nx = static_cast<long>(grid.nx);
    const long ny = static_cast<long>(grid.ny);
    for (std::size_t r = 1;; ++r)
    {
        std::size_t added = 0;
        for (auto [di, dj] : spiral_ring(r))
        {
            const long i = static_cast<long>(seed.i) + di;
            const long j = static_cast<long>(seed.j) + dj;
            if (i < 0 || j < 0 || i >= nx || j >= ny)
                continue;
            const Cell c{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
            if (claimed.test(c))
                continue;
            const auto row = map.row(c);
            if (tracker.rank_with(row) <= policy.rank_limit)
            {
                tracker.add(row);
                region.cells.push_back(c);
                ++added;
            }
        }
        if (added == 0)
        {
            region.final_radius = r;
            break;
        }
    }

    const ShapeMetrics shape = shape_metrics(region.cells, grid.delta);
    region.area_m2 = shape.area_m2;
    region.perimeter_m = shape.perimeter_m;
    region.eta = shape.eta;
    return region;
}

RegionSet detect_regions(const ChannelMap &map, std::size_t num_seeds, const RankPolicy &policy, double eta_threshold,
                         std::uint64_t seed)
{
    policy.validate();
    if (num_seeds < 1)
        throw Error(ErrorKind::invalid_params, "num_seeds must be >= 1");
    if (!std::isfinite(eta_threshold))
        throw Error(ErrorKind::invalid_params, "eta_threshold must be finite");

    const GridSpec &grid = map.grid();
    CellMask claimed(grid);
    std::size_t unclaimed = grid.cell_count();
    Rng rng(seed);

    RegionSet set;
    set.eta_threshold = eta_threshold;
    for (std::size_t s = 0; s < num_seeds; ++s)
    {
        if (unclaimed == 0)
            throw Error(ErrorKind::insufficient_unclaimed_cells,
                        "map exhausted after " + std::to_string(s) + " of " + std::to_string(num_seeds) + " seeds");
        // Pick the k-th unclaimed cell in row-major order.
        std::uint64_t k = rng.below(unclaimed);
        Cell pick{};
        for (std::size_t n = 0; n < grid.cell_count(); ++n)
        {
            const Cell c = grid.cell(n);
            if (claimed.test(c))
                continue;
            if (k-- == 0)
            {
                pick = c;
                break;
            }
        }
        Region region = spiral_grow(map, pick, policy, claimed);
        for (const Cell &c : region.cells)
            claimed.set(c);
        unclaimed -= region.cells.size();
        set.labels.push_back(region.eta >= eta_threshold ? Propagation::nlos : Propagation::los);
        set.regions.push_back(std::move(region));
    }
    return set;
}

const char *to_string(Propagation p) noexcept
{
    return p == Propagation::nlos ? "NLoS" : "LoS";
}

ResultTable region_cells_table(const RegionSet &set)
{
    ResultTable table({"cell_i", "cell_j", "region_id", "label"});
    for (std::size_t r = 0; r < set.regions.size(); ++r)
    {
        std::vector<Cell> cells = set.regions[r].cells;
        std::sort(cells.begin(), cells.end());
        for (const Cell &c : cells)
            table.add_row({static_cast<std::int64_t>(c.i), static_cast<std::int64_t>(c.j), static_cast<std::int64_t>(r),
                           std::string(to_string(set.labels[r]))});
    }
    return table;
}

std::string region_summary_json(const RegionSet &set)
{
    using nlohmann::json;
    json regions = json::array();
    std::vector<double> eta_los, eta_nlos;
    for (std::size_t r = 0; r < set.regions.size(); ++r)
    {
        const Region &reg = set.regions[r];
        regions.push_back({{"region_id", r},
                           {"seed_i", reg.seed_cell.i},
                           {"seed_j", reg.seed_cell.j},
                           {"cells", reg.cells.size()},
                           {"final_radius", reg.final_radius},
                           {"area_m2", reg.area_m2},
                           {"perimeter_m", reg.perimeter_m},
                           {"eta", reg.eta},
                           {"label", to_string(set.labels[r])}});
        (set.labels[r] == Propagation::nlos ? eta_nlos : eta_los).push_back(reg.eta);
    }
    auto stats = [](const std::vector<double> &v) {
        return json{{"count", v.size()}, {"median_eta", median(v)}, {"mean_eta", mean(v)}};
    };
    json doc = {{"eta_threshold", set.eta_threshold},
                {"regions", regions},
                {"labels", {{"LoS", stats(eta_los)}, {"NLoS", stats(eta_nlos)}}}};
    return doc.dump(2) + "\n";
}

} // namespace areamimo
