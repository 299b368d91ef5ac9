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

#include "areamimo/channel_synth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "areamimo/error.hpp"
#include "areamimo/rng.hpp"

namespace areamimo
{

void NlosParams::validate() const
{
    if (sx < 1 || sy < 1)
        throw Error(ErrorKind::invalid_params, "need at least one stationary point per axis");
    if (L < 2 || L % 2 != 0)
        throw Error(ErrorKind::invalid_params, "upsampling factor L must be an even integer >= 2");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorKind::invalid_params, "alpha must be positive");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw Error(ErrorKind::invalid_params, "sigma2 must be positive");
}

ChannelMap synth_los(const GridSpec &grid, const CarrierSpec &carrier, const ArrayGeometry &array)
{
    grid.validate();
    const double lambda = carrier.lambda();
    const auto &ant = array.positions();
    CMatrix h(static_cast<Eigen::Index>(grid.cell_count()), static_cast<Eigen::Index>(ant.size()));

    for (std::size_t i = 0; i < grid.nx; ++i)
        for (std::size_t j = 0; j < grid.ny; ++j)
        {
            const Cell c{i, j};
            const Point2 p = grid.position(c);
            const auto row = static_cast<Eigen::Index>(grid.index(c));
            for (std::size_t m = 0; m < ant.size(); ++m)
            {
                const double d = distance(p, ant[m]);
                if (d == 0.0)
                    throw Error(ErrorKind::zero_distance, "grid cell (" + std::to_string(i) + ", " +
                                                              std::to_string(j) + ") coincides with antenna " +
                                                              std::to_string(m));
                h(row, static_cast<Eigen::Index>(m)) =
                    std::polar(lambda / (4.0 * std::numbers::pi * d), 2.0 * std::numbers::pi * d / lambda);
            }
        }

    nlohmann::json params = {{"antennas", ant.size()}};
    return ChannelMap(grid, carrier, std::move(h), {MapSource::synthetic_los, std::nullopt, params.dump()});
}

ArrayGeometry default_los_array(const GridSpec &grid, const CarrierSpec &carrier, std::size_t count,
                                double standoff)
{
    grid.validate();
    if (!(standoff > 0.0))
        throw Error(ErrorKind::invalid_params, "array standoff must be positive");
    const double xc = grid.x0 + 0.5 * static_cast<double>(grid.nx - 1) * grid.delta;
    return ArrayGeometry::uniform_linear(count, 0.5 * carrier.lambda(), {xc, grid.y0 - standoff});
}

double los_matched_alpha(const GridSpec &grid, const CarrierSpec &carrier, const ArrayGeometry &array)
{
    grid.validate();
    Point2 c{0.0, 0.0};
    for (const Point2 &p : array.positions())
    {
        c.x += p.x;
        c.y += p.y;
    }
    const auto m = static_cast<double>(array.size());
    c = {c.x / m, c.y / m};
    const Point2 centre{grid.x0 + 0.5 * static_cast<double>(grid.nx - 1) * grid.delta,
                        grid.y0 + 0.5 * static_cast<double>(grid.ny - 1) * grid.delta};
    const double d = distance(c, centre);
    if (!(d > 0.0))
        throw Error(ErrorKind::zero_distance, "array centroid coincides with the grid centre");
    return carrier.lambda() / (4.0 * std::numbers::pi * d);
}

std::vector<double> gaussian_kernel(std::size_t L)
{
    const std::size_t width = L + 1;
    const double half = static_cast<double>(L / 2);
    const double l2 = static_cast<double>(L) * static_cast<double>(L);
    std::vector<double> g(width * width);
    for (std::size_t a = 0; a < width; ++a)
        for (std::size_t b = 0; b < width; ++b)
        {
            const double x = static_cast<double>(a) - half;
            const double y = static_cast<double>(b) - half;
            g[a * width + b] = std::exp(-(x * x + y * y) / l2);
        }
    return g;
}

GridSpec nlos_grid(const NlosParams &params, const CarrierSpec &carrier)
{
    params.validate();
    GridSpec grid;
    grid.nx = params.sx * params.L;
    grid.ny = params.sy * params.L;
    grid.delta = 0.5 * carrier.lambda() / static_cast<double>(params.L);
    return grid;
}

ChannelMap synth_nlos(const NlosParams &params, std::size_t antennas, const CarrierSpec &carrier)
{
    params.validate();
    if (antennas < 1)
        throw Error(ErrorKind::invalid_params, "antenna count must be >= 1");

    const std::size_t L = params.L;
    const GridSpec grid = nlos_grid(params, carrier);

    const auto M = static_cast<Eigen::Index>(antennas);
    const std::vector<double> kernel = gaussian_kernel(L);
    const std::size_t width = L + 1;
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(grid.cell_count()), M);

    // Zero-padded impulses convolved with the kernel: each stationary vector
    // is stamped onto its (L+1)^2 neighbourhood; cells outside the map drop.
    CRowVector stationary(M);
    for (std::size_t a = 0; a < params.sx; ++a)
        for (std::size_t b = 0; b < params.sy; ++b)
        {
            Rng rng = Rng::substream(params.seed, a * params.sy + b);
            for (Eigen::Index m = 0; m < M; ++m)
                stationary(m) = params.alpha * rng.complex_normal(params.sigma2);

            const std::size_t ci = stationary_cell(a, L);
            const std::size_t cj = stationary_cell(b, L);
            for (std::size_t u = 0; u < width; ++u)
            {
                const std::size_t i = ci + u - L / 2;
                if (i >= grid.nx)
                    continue;
                for (std::size_t v = 0; v < width; ++v)
                {
                    const std::size_t j = cj + v - L / 2;
                    if (j >= grid.ny)
                        continue;
                    h.row(static_cast<Eigen::Index>(grid.index({i, j}))) += kernel[u * width + v] * stationary;
                }
            }
        }

    nlohmann::json meta = {{"sx", params.sx},         {"sy", params.sy},         {"L", params.L},
                           {"alpha", params.alpha},   {"sigma2", params.sigma2}, {"antennas", antennas}};
    return ChannelMap(grid, carrier, std::move(h), {MapSource::synthetic_nlos, params.seed, meta.dump()});
}

RegionPredicate nlos_rectangle(std::size_t i_min, std::size_t j_min)
{
    return [i_min, j_min](Cell c) { return (c.i > i_min && c.j > j_min) ? Propagation::nlos : Propagation::los; };
}

ChannelMap compose_mixed(const ChannelMap &los, const ChannelMap &nlos, const RegionPredicate &predicate)
{
    if (!(los.grid() == nlos.grid()))
        throw Error(ErrorKind::shape_mismatch, "LoS and NLoS maps are on different grids");
    if (los.antennas() != nlos.antennas())
        throw Error(ErrorKind::shape_mismatch, "LoS map has " + std::to_string(los.antennas()) +
                                                   " antennas, NLoS map has " + std::to_string(nlos.antennas()));
    const GridSpec &grid = los.grid();
    CMatrix h(los.coeffs().rows(), los.coeffs().cols());
    for (std::size_t n = 0; n < grid.cell_count(); ++n)
    {
        const auto r = static_cast<Eigen::Index>(n);
        h.row(r) = predicate(grid.cell(n)) == Propagation::nlos ? nlos.coeffs().row(r) : los.coeffs().row(r);
    }
    MapProvenance prov{MapSource::synthetic_mixed, nlos.provenance().seed, "{}"};
    return ChannelMap(grid, los.carrier(), std::move(h), std::move(prov));
}

} // namespace areamimo
