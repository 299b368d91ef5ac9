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
#include <functional>
#include <vector>

#include "areamimo/channel_map.hpp"

namespace areamimo
{

/// Parameters of the filtered (spatially consistent) NLoS model.
struct NlosParams
{
    std::size_t sx = 7;      ///< stationary points along x
    std::size_t sy = 7;      ///< stationary points along y
    std::size_t L = 20;      ///< upsampling factor, even, >= 2
    double alpha = 1.0;      ///< average path-loss scale
    double sigma2 = 1.0;     ///< variance of the stationary CN(0, sigma2) entries
    std::uint64_t seed = 0;

    /// Throws InvalidParams on violated constraints.
    void validate() const;
};

/// Grid of the filtered NLoS map: (sx*L) x (sy*L) cells at lambda / (2L),
/// origin (0, 0).
GridSpec nlos_grid(const NlosParams &params, const CarrierSpec &carrier);

/// Free-space LoS map: h = lambda/(4 pi d) * exp(j 2 pi d / lambda) per
/// position/antenna pair. Throws ZeroDistance if a grid point coincides with
/// an antenna.
ChannelMap synth_los(const GridSpec &grid, const CarrierSpec &carrier, const ArrayGeometry &array);

/// Default LoS array: `count` antennas at lambda/2 pitch along x, centred on
/// the grid's x-extent, `standoff` metres below the grid's lower edge.
ArrayGeometry default_los_array(const GridSpec &grid, const CarrierSpec &carrier, std::size_t count,
                                double standoff);

/// Free-space amplitude lambda / (4 pi d) from the array centroid to the grid
/// centre. Used as the NLoS path-loss scalar alpha so that both halves of a
/// mixed map carry comparable power.
double los_matched_alpha(const GridSpec &grid, const CarrierSpec &carrier, const ArrayGeometry &array);

/// Truncated Gaussian kernel G(x, y) = exp(-(x^2 + y^2) / L^2) on the
/// (L+1) x (L+1) support |x|, |y| <= L/2, stored row-major over (x, y)
/// offsets starting at -L/2.
std::vector<double> gaussian_kernel(std::size_t L);

/// Output cell hosting stationary point s along one axis.
inline std::size_t stationary_cell(std::size_t s, std::size_t L) noexcept { return s * L + L / 2; }

/// Filtered NLoS map on an (sx*L) x (sy*L) grid with pitch (lambda/2)/L.
///
/// Stationary point (a, b) draws `antennas` values from substream a*sy + b
/// of `params.seed`, scaled by alpha, placed at cell
/// (stationary_cell(a), stationary_cell(b)); every antenna layer is then
/// convolved with gaussian_kernel(L), with zeros outside the map.
ChannelMap synth_nlos(const NlosParams &params, std::size_t antennas, const CarrierSpec &carrier);

enum class Propagation
{
    los,
    nlos
};

using RegionPredicate = std::function<Propagation(Cell)>;

/// Rectangle rule of the mixed scenario: NLoS where i > i_min and j > j_min.
RegionPredicate nlos_rectangle(std::size_t i_min, std::size_t j_min);

/// Row-wise selection between two maps on the same grid and antenna count.
/// Throws ShapeMismatch otherwise.
ChannelMap compose_mixed(const ChannelMap &los, const ChannelMap &nlos, const RegionPredicate &predicate);

} // namespace areamimo
