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

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "areamimo/grid.hpp"

namespace areamimo
{

using cd = std::complex<double>;
/// Row-major complex matrix; one row per grid position.
using CMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<cd, Eigen::Dynamic, 1>;
using CRowVector = Eigen::Matrix<cd, 1, Eigen::Dynamic>;

enum class MapSource
{
    synthetic_los,
    synthetic_nlos,
    synthetic_mixed,
    measured
};

const char *to_string(MapSource source) noexcept;
/// Throws FormatError for unknown names.
MapSource map_source_from_string(const std::string &name);

/// Where a map came from. `params_json` is an opaque JSON object string
/// carried through serialization untouched.
struct MapProvenance
{
    MapSource source = MapSource::measured;
    std::optional<std::uint64_t> seed;
    std::string params_json = "{}";
};

/// Complex channel coefficients on a regular grid: (nx*ny) x M, row-major
/// over (i, j), one column per antenna. Immutable once constructed.
class ChannelMap
{
public:
    /// Throws ShapeMismatch if coeffs is not (nx*ny) x M with M >= 1, and
    /// InvalidParams for a bad grid or non-finite coefficients.
    ChannelMap(GridSpec grid, CarrierSpec carrier, CMatrix coeffs, MapProvenance provenance = {});

    const GridSpec &grid() const noexcept { return grid_; }
    const CarrierSpec &carrier() const noexcept { return carrier_; }
    const MapProvenance &provenance() const noexcept { return provenance_; }
    const CMatrix &coeffs() const noexcept { return coeffs_; }

    std::size_t positions() const noexcept { return static_cast<std::size_t>(coeffs_.rows()); }
    std::size_t antennas() const noexcept { return static_cast<std::size_t>(coeffs_.cols()); }

    auto row(std::size_t n) const { return coeffs_.row(static_cast<Eigen::Index>(n)); }
    auto row(Cell c) const { return row(grid_.index(c)); }

    /// Map restricted to the first `m` antennas (1 <= m <= M).
    ChannelMap antenna_prefix(std::size_t m) const;

private:
    GridSpec grid_;
    CarrierSpec carrier_;
    CMatrix coeffs_;
    MapProvenance provenance_;
};

} // namespace areamimo
