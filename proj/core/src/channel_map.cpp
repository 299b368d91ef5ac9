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

#include "areamimo/channel_map.hpp"

#include <cmath>
#include <string>

#include "areamimo/error.hpp"

namespace areamimo
{

double distance(const Point2 &a, const Point2 &b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

void GridSpec::validate() const
{
    if (nx < 1 || ny < 1)
        throw Error(ErrorKind::invalid_params, "grid needs nx >= 1 and ny >= 1");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw Error(ErrorKind::invalid_params, "grid pitch delta must be positive and finite");
    if (!std::isfinite(x0) || !std::isfinite(y0))
        throw Error(ErrorKind::invalid_params, "grid origin must be finite");
}

Cell GridSpec::nearest_cell(const Point2 &p) const
{
    const double fi = std::round((p.x - x0) / delta);
    const double fj = std::round((p.y - y0) / delta);
    if (!(fi >= 0.0) || !(fj >= 0.0) || fi > static_cast<double>(nx - 1) || fj > static_cast<double>(ny - 1))
        throw Error(ErrorKind::out_of_bounds,
                    "position (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") lies outside the grid");
    return {static_cast<std::size_t>(fi), static_cast<std::size_t>(fj)};
}

CarrierSpec::CarrierSpec(double fc_hz) : fc_(fc_hz), lambda_(speed_of_light / fc_hz)
{
    if (!(fc_hz > 0.0) || !std::isfinite(fc_hz))
        throw Error(ErrorKind::invalid_params, "carrier frequency must be positive");
}

ArrayGeometry::ArrayGeometry(std::vector<Point2> positions) : positions_(std::move(positions))
{
    if (positions_.empty())
        throw Error(ErrorKind::invalid_params, "array needs at least one antenna");
    for (std::size_t a = 0; a < positions_.size(); ++a)
    {
        if (!std::isfinite(positions_[a].x) || !std::isfinite(positions_[a].y))
            throw Error(ErrorKind::invalid_params, "antenna positions must be finite");
        for (std::size_t b = a + 1; b < positions_.size(); ++b)
            if (positions_[a] == positions_[b])
                throw Error(ErrorKind::invalid_params,
                            "antennas " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
    }
}

ArrayGeometry ArrayGeometry::uniform_linear(std::size_t count, double spacing, Point2 center)
{
    if (count < 1)
        throw Error(ErrorKind::invalid_params, "array needs at least one antenna");
    if (!(spacing > 0.0))
        throw Error(ErrorKind::invalid_params, "antenna spacing must be positive");
    std::vector<Point2> pos(count);
    const double mid = 0.5 * static_cast<double>(count - 1);
    for (std::size_t m = 0; m < count; ++m)
        pos[m] = {center.x + (static_cast<double>(m) - mid) * spacing, center.y};
    return ArrayGeometry(std::move(pos));
}

const char *to_string(MapSource source) noexcept
{
    switch (source)
    {
    case MapSource::synthetic_los:
        return "synthetic-los";
    case MapSource::synthetic_nlos:
        return "synthetic-nlos";
    case MapSource::synthetic_mixed:
        return "synthetic-mixed";
    case MapSource::measured:
        return "measured";
    }
    return "measured";
}

MapSource map_source_from_string(const std::string &name)
{
    for (auto s : {MapSource::synthetic_los, MapSource::synthetic_nlos, MapSource::synthetic_mixed, MapSource::measured})
        if (name == to_string(s))
            return s;
    throw Error(ErrorKind::format_error, "unknown map source '" + name + "'");
}

ChannelMap::ChannelMap(GridSpec grid, CarrierSpec carrier, CMatrix coeffs, MapProvenance provenance)
    : grid_(grid), carrier_(carrier), coeffs_(std::move(coeffs)), provenance_(std::move(provenance))
{
    grid_.validate();
    if (coeffs_.cols() < 1)
        throw Error(ErrorKind::shape_mismatch, "channel map needs at least one antenna column");
    if (static_cast<std::size_t>(coeffs_.rows()) != grid_.cell_count())
        throw Error(ErrorKind::shape_mismatch, "channel map has " + std::to_string(coeffs_.rows()) +
                                                   " rows, grid has " + std::to_string(grid_.cell_count()) +
                                                   " cells");
    const cd *data = coeffs_.data();
    for (Eigen::Index k = 0; k < coeffs_.size(); ++k)
        if (!std::isfinite(data[k].real()) || !std::isfinite(data[k].imag()))
            throw Error(ErrorKind::invalid_params,
                        "non-finite coefficient at flat index " + std::to_string(k));
}

ChannelMap ChannelMap::antenna_prefix(std::size_t m) const
{
    if (m < 1 || m > antennas())
        throw Error(ErrorKind::shape_mismatch, "antenna prefix " + std::to_string(m) + " outside [1, " +
                                                   std::to_string(antennas()) + "]");
    return ChannelMap(grid_, carrier_, coeffs_.leftCols(static_cast<Eigen::Index>(m)), provenance_);
}

} // namespace areamimo
