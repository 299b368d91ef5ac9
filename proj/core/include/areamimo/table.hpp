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
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace areamimo
{

using TableValue = std::variant<std::int64_t, double, std::string>;

/// Rectangular result table serialized as RFC 4180 CSV with one header line.
///
/// Doubles are written in shortest round-trip form and always carry a '.'
/// or an exponent, so a re-read table has the same cell types and values.
class ResultTable
{
public:
    ResultTable() = default;
    explicit ResultTable(std::vector<std::string> columns);

    const std::vector<std::string> &columns() const noexcept { return columns_; }
    const std::vector<std::vector<TableValue>> &rows() const noexcept { return rows_; }
    std::size_t row_count() const noexcept { return rows_.size(); }

    /// Throws SerializationError on a width mismatch or a non-finite double.
    void add_row(std::vector<TableValue> row);

    /// Column index by name; throws FormatError when absent.
    std::size_t column(const std::string &name) const;

    /// Numeric cell as double (integers widen); throws FormatError for strings.
    double number(std::size_t row, std::size_t col) const;
    double number(std::size_t row, const std::string &col) const { return number(row, column(col)); }
    const TableValue &at(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }

    friend bool operator==(const ResultTable &, const ResultTable &) = default;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<TableValue>> rows_;
};

std::string format_double(double v);
std::string to_csv(const ResultTable &table);
/// Throws FormatError on malformed CSV or ragged rows.
ResultTable from_csv(const std::string &text);

/// Throws IoError or SerializationError.
void write_table(const ResultTable &table, const std::filesystem::path &path);
/// Throws IoError or FormatError.
ResultTable read_table(const std::filesystem::path &path);

} // namespace areamimo
