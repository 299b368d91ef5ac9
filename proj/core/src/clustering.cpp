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

#include "areamimo/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "areamimo/error.hpp"
#include "areamimo/rng.hpp"

namespace areamimo
{

namespace
{

using Index = Eigen::Index;

std::vector<std::size_t> random_distinct(std::size_t n, std::size_t k, Rng &rng)
{
    // Partial Fisher-Yates over [0, n).
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t a = 0; a < k; ++a)
    {
        const std::size_t b = a + static_cast<std::size_t>(rng.below(n - a));
        std::swap(pool[a], pool[b]);
    }
    pool.resize(k);
    return pool;
}

std::vector<std::size_t> plus_plus(const CMatrix &x, std::size_t k, Rng &rng)
{
    const auto n = static_cast<std::size_t>(x.rows());
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::vector<char> taken(n, 0);
    chosen.push_back(static_cast<std::size_t>(rng.below(n)));
    taken[chosen.back()] = 1;

    std::vector<double> d2(n);
    for (std::size_t p = 0; p < n; ++p)
        d2[p] = (x.row(static_cast<Index>(p)) - x.row(static_cast<Index>(chosen[0]))).squaredNorm();

    while (chosen.size() < k)
    {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        std::size_t pick = n;
        if (total > 0.0)
        {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t p = 0; p < n; ++p)
            {
                acc += d2[p];
                if (!taken[p] && d2[p] > 0.0 && acc > target)
                {
                    pick = p;
                    break;
                }
            }
            if (pick == n) // rounding at the tail; take the last positive weight
                for (std::size_t p = n; p-- > 0;)
                    if (!taken[p] && d2[p] > 0.0)
                    {
                        pick = p;
                        break;
                    }
        }
        if (pick == n)
        {
            // Every remaining position duplicates a chosen centroid.
            std::uint64_t r = rng.below(n - chosen.size());
            for (std::size_t p = 0; p < n; ++p)
                if (!taken[p] && r-- == 0)
                {
                    pick = p;
                    break;
                }
        }
        chosen.push_back(pick);
        taken[pick] = 1;
        for (std::size_t p = 0; p < n; ++p)
            d2[p] = std::min(d2[p], (x.row(static_cast<Index>(p)) - x.row(static_cast<Index>(pick))).squaredNorm());
    }
    return chosen;
}

using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// [Re | Im] so that Re<x, c> becomes a real dot product.
RMatrix stack_real(const CMatrix &x)
{
    RMatrix r(x.rows(), 2 * x.cols());
    r.leftCols(x.cols()) = x.real();
    r.rightCols(x.cols()) = x.imag();
    return r;
}

/// Nearest centroid per row. |x - c|^2 = |x|^2 - 2 Re<x, c> + |c|^2; the
/// |x|^2 term is common to a row and dropped.
void assign(const RMatrix &xr, const CMatrix &centroids, std::vector<std::uint32_t> &out)
{
    const Eigen::MatrixXd cross = xr * stack_real(centroids).transpose();
    const Eigen::VectorXd cnorm = centroids.rowwise().squaredNorm();
    const Index n = xr.rows();
    const Index k = centroids.rows();
    out.resize(static_cast<std::size_t>(n));
    for (Index p = 0; p < n; ++p)
    {
        Index best = 0;
        double best_d = cnorm(0) - 2.0 * cross(p, 0);
        for (Index j = 1; j < k; ++j)
        {
            const double d = cnorm(j) - 2.0 * cross(p, j);
            if (d < best_d)
            {
                best_d = d;
                best = j;
            }
        }
        out[static_cast<std::size_t>(p)] = static_cast<std::uint32_t>(best);
    }
}

void update(const CMatrix &x, const std::vector<std::uint32_t> &a, CMatrix &centroids, std::vector<std::size_t> &counts)
{
    centroids.setZero();
    std::fill(counts.begin(), counts.end(), std::size_t{0});
    for (std::size_t p = 0; p < a.size(); ++p)
    {
        centroids.row(a[p]) += x.row(static_cast<Index>(p));
        ++counts[a[p]];
    }
    for (std::size_t j = 0; j < counts.size(); ++j)
        if (counts[j] > 0)
            centroids.row(static_cast<Index>(j)) /= static_cast<double>(counts[j]);
}

void recompute_centroid(const CMatrix &x, const std::vector<std::uint32_t> &a, std::uint32_t j, CMatrix &centroids,
                        std::size_t count)
{
    centroids.row(j).setZero();
    for (std::size_t p = 0; p < a.size(); ++p)
        if (a[p] == j)
            centroids.row(j) += x.row(static_cast<Index>(p));
    centroids.row(j) /= static_cast<double>(count);
}

/// Moves the farthest position of a multi-member cluster into each empty
/// cluster. Returns the number of repairs.
std::size_t repair_empty(const CMatrix &x, std::vector<std::uint32_t> &a, CMatrix &centroids,
                         std::vector<std::size_t> &counts)
{
    std::size_t repairs = 0;
    for (std::size_t j = 0; j < counts.size(); ++j)
    {
        if (counts[j] != 0)
            continue;
        std::size_t far = a.size();
        double far_d = -1.0;
        for (std::size_t p = 0; p < a.size(); ++p)
        {
            if (counts[a[p]] < 2)
                continue;
            const double d = (x.row(static_cast<Index>(p)) - centroids.row(a[p])).squaredNorm();
            if (d > far_d)
            {
                far_d = d;
                far = p;
            }
        }
        if (far == a.size())
            throw Error(ErrorKind::k_too_large, "cannot re-seed an empty cluster: no multi-member cluster left");
        const std::uint32_t donor = a[far];
        a[far] = static_cast<std::uint32_t>(j);
        --counts[donor];
        counts[j] = 1;
        centroids.row(static_cast<Index>(j)) = x.row(static_cast<Index>(far));
        recompute_centroid(x, a, donor, centroids, counts[donor]);
        ++repairs;
    }
    return repairs;
}

} // namespace

const char *to_string(KMeansInit init) noexcept
{
    return init == KMeansInit::plus_plus ? "plusplus" : "random";
}

KMeansInit kmeans_init_from_string(const std::string &name)
{
    if (name == "random")
        return KMeansInit::random;
    if (name == "plusplus")
        return KMeansInit::plus_plus;
    throw Error(ErrorKind::invalid_params, "unknown k-means initialization '" + name + "'");
}

std::vector<std::size_t> Clustering::cluster_sizes() const
{
    std::vector<std::size_t> sizes(k, 0);
    for (auto c : assignment)
        ++sizes[c];
    return sizes;
}

Clustering kmeans(const CMatrix &x, const KMeansOptions &opt)
{
    const auto n = static_cast<std::size_t>(x.rows());
    if (n == 0 || x.cols() == 0)
        throw Error(ErrorKind::empty_input, "k-means needs at least one position and one antenna");
    if (opt.k < 1)
        throw Error(ErrorKind::invalid_params, "k must be >= 1");
    if (opt.k > n)
        throw Error(ErrorKind::k_too_large, "k = " + std::to_string(opt.k) + " exceeds " + std::to_string(n) +
                                                " positions");
    if (opt.max_iters < 1)
        throw Error(ErrorKind::invalid_params, "max_iters must be >= 1");
    if (opt.k > std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorKind::invalid_params, "k too large for cluster labels");

    std::vector<std::size_t> init;
    if (opt.initial_indices)
    {
        init = *opt.initial_indices;
        std::vector<std::size_t> sorted = init;
        std::sort(sorted.begin(), sorted.end());
        if (init.size() != opt.k || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            (!sorted.empty() && sorted.back() >= n))
            throw Error(ErrorKind::invalid_params, "initial_indices must be k distinct in-range positions");
    }
    else
    {
        Rng rng(opt.seed);
        init = opt.init == KMeansInit::plus_plus ? plus_plus(x, opt.k, rng) : random_distinct(n, opt.k, rng);
    }

    Clustering out;
    out.k = opt.k;
    out.centroids.resize(static_cast<Index>(opt.k), x.cols());
    for (std::size_t j = 0; j < opt.k; ++j)
        out.centroids.row(static_cast<Index>(j)) = x.row(static_cast<Index>(init[j]));

    std::vector<std::size_t> counts(opt.k, 0);
    std::vector<std::uint32_t> next;
    const RMatrix xr = stack_real(x);
    assign(xr, out.centroids, out.assignment);
    for (std::size_t it = 1; it <= opt.max_iters; ++it)
    {
        update(x, out.assignment, out.centroids, counts);
        out.repairs += repair_empty(x, out.assignment, out.centroids, counts);
        out.iterations = it;
        out.wcss_history.push_back(wcss(x, out));

        assign(xr, out.centroids, next);
        if (next == out.assignment)
        {
            out.converged = true;
            break;
        }
        out.assignment.swap(next);
    }
    if (!out.converged)
    {
        // Keep centroids consistent with the final assignment.
        update(x, out.assignment, out.centroids, counts);
        out.repairs += repair_empty(x, out.assignment, out.centroids, counts);
    }
    return out;
}

Clustering kmeans(const ChannelMap &map, std::span<const std::size_t> positions, const KMeansOptions &options)
{
    if (positions.empty())
        throw Error(ErrorKind::empty_input, "position subset is empty");
    CMatrix x(static_cast<Index>(positions.size()), static_cast<Index>(map.antennas()));
    for (std::size_t p = 0; p < positions.size(); ++p)
    {
        if (positions[p] >= map.positions())
            throw Error(ErrorKind::out_of_bounds, "position index " + std::to_string(positions[p]) + " outside map");
        x.row(static_cast<Index>(p)) = map.row(positions[p]);
    }
    Clustering c = kmeans(x, options);
    c.positions.assign(positions.begin(), positions.end());
    return c;
}

Clustering kmeans(const ChannelMap &map, const KMeansOptions &options)
{
    return kmeans(map.coeffs(), options);
}

double wcss(const CMatrix &rows, const Clustering &c)
{
    double total = 0.0;
    for (std::size_t p = 0; p < c.assignment.size(); ++p)
        total += (rows.row(static_cast<Index>(p)) - c.centroids.row(c.assignment[p])).squaredNorm();
    return total;
}

double wcss(const ChannelMap &map, const Clustering &c)
{
    double total = 0.0;
    for (std::size_t p = 0; p < c.assignment.size(); ++p)
        total += (map.row(c.map_row(p)) - c.centroids.row(c.assignment[p])).squaredNorm();
    return total;
}

ResultTable clustering_table(const ChannelMap &map, const Clustering &c)
{
    ResultTable table({"cell_i", "cell_j", "cluster_id"});
    for (std::size_t p = 0; p < c.assignment.size(); ++p)
    {
        const Cell cell = map.grid().cell(c.map_row(p));
        table.add_row({static_cast<std::int64_t>(cell.i), static_cast<std::int64_t>(cell.j),
                       static_cast<std::int64_t>(c.assignment[p])});
    }
    return table;
}

} // namespace areamimo
