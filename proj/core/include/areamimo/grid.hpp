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

#include <compare>
#include <cstddef>
#include <vector>

namespace areamimo
{

/// Speed of light in vacuum [m/s].
inline constexpr double speed_of_light = 299792458.0;

struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

double distance(const Point2 &a, const Point2 &b) noexcept;

/// Grid cell index; i runs along x, j along y.
struct Cell
{
    std::size_t i = 0;
    std::size_t j = 0;

    friend auto operator<=>(const Cell &, const Cell &) = default;
};

/// Regular 2D sampling grid. Cell (i, j) sits at (x0 + i*delta, y0 + j*delta).
/// Rows of any per-position matrix are ordered row-major over (i, j), i.e.
/// row index = i * ny + j.
struct GridSpec
{
    std::size_t nx = 1;
    std::size_t ny = 1;
    double delta = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;

    /// Throws InvalidParams unless nx, ny >= 1 and delta > 0 (finite).
    void validate() const;

    std::size_t cell_count() const noexcept { return nx * ny; }
    std::size_t index(Cell c) const noexcept { return c.i * ny + c.j; }
    Cell cell(std::size_t index) const noexcept { return {index / ny, index % ny}; }
    bool contains(Cell c) const noexcept { return c.i < nx && c.j < ny; }
    Point2 position(Cell c) const noexcept
    {
        return {x0 + static_cast<double>(c.i) * delta, y0 + static_cast<double>(c.j) * delta};
    }
    double cell_area() const noexcept { return delta * delta; }
    double area_m2() const noexcept { return static_cast<double>(cell_count()) * cell_area(); }

    /// Nearest cell to a position; throws OutOfBounds when the position lies
    /// more than half a pitch outside the grid.
    Cell nearest_cell(const Point2 &p) const;

    friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

class CarrierSpec
{
public:
    /// Throws InvalidParams unless fc > 0.
    explicit CarrierSpec(double fc_hz);

    double fc() const noexcept { return fc_; }
    double lambda() const noexcept { return lambda_; }

    friend bool operator==(const CarrierSpec &, const CarrierSpec &) = default;

private:
    double fc_;
    double lambda_;
};

/// Antenna positions of the base-station array.
class ArrayGeometry
{
public:
    /// Throws InvalidParams on an empty list or coincident antennas.
    explicit ArrayGeometry(std::vector<Point2> positions);

    /// M antennas along x at the given spacing, centred on `center`.
    static ArrayGeometry uniform_linear(std::size_t count, double spacing, Point2 center);

    std::size_t size() const noexcept { return positions_.size(); }
    const std::vector<Point2> &positions() const noexcept { return positions_; }

private:
    std::vector<Point2> positions_;
};

} // namespace areamimo
