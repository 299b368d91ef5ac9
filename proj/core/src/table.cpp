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

#include "areamimo/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "areamimo/error.hpp"

namespace areamimo
{

namespace
{

std::optional<TableValue> parse_number(const std::string &s)
{
    if (s.empty())
        return std::nullopt;
    const char *first = s.data();
    const char *last = s.data() + s.size();
    if (s.find_first_of(".eE") == std::string::npos)
    {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec == std::errc() && ptr == last)
            return TableValue(v);
        return std::nullopt;
    }
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, d, std::chars_format::general);
    if (ec == std::errc() && ptr == last && std::isfinite(d))
        return TableValue(d);
    return std::nullopt;
}

std::string quote_if_needed(const std::string &s)
{
    const bool special = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!special && !parse_number(s))
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_cell(const TableValue &v)
{
    if (const auto *i = std::get_if<std::int64_t>(&v))
        return std::to_string(*i);
    if (const auto *d = std::get_if<double>(&v))
        return format_double(*d);
    return quote_if_needed(std::get<std::string>(v));
}

struct Field
{
    std::string text;
    bool quoted = false;
};

// RFC 4180 record splitter; accepts CRLF or bare LF line ends.
std::vector<std::vector<Field>> split_records(const std::string &text)
{
    std::vector<std::vector<Field>> records;
    std::vector<Field> record;
    Field field;
    std::size_t pos = 0;
    bool field_started = false;
    const std::size_t n = text.size();

    auto end_field = [&] {
        record.push_back(std::move(field));
        field = Field{};
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    while (pos < n)
    {
        const char c = text[pos];
        if (c == '"' && !field_started)
        {
            field.quoted = true;
            field_started = true;
            ++pos;
            while (true)
            {
                if (pos >= n)
                    throw Error(ErrorKind::format_error, "unterminated quoted CSV field");
                if (text[pos] == '"')
                {
                    if (pos + 1 < n && text[pos + 1] == '"')
                    {
                        field.text += '"';
                        pos += 2;
                        continue;
                    }
                    ++pos;
                    break;
                }
                field.text += text[pos++];
            }
            if (pos < n && text[pos] != ',' && text[pos] != '\r' && text[pos] != '\n')
                throw Error(ErrorKind::format_error, "unexpected character after closing quote");
            continue;
        }
        if (c == ',')
        {
            end_field();
            ++pos;
            continue;
        }
        if (c == '\r' || c == '\n')
        {
            end_record();
            pos += (c == '\r' && pos + 1 < n && text[pos + 1] == '\n') ? 2 : 1;
            continue;
        }
        if (c == '"')
            throw Error(ErrorKind::format_error, "stray quote inside unquoted CSV field");
        field.text += c;
        field_started = true;
        ++pos;
    }
    if (field_started || !record.empty())
        end_record();
    return records;
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, ptr);
    if (s.find_first_of(".eEn") == std::string::npos)
        s += ".0";
    return s;
}

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<TableValue> row)
{
    if (row.size() != columns_.size())
        throw Error(ErrorKind::serialization_error, "row has " + std::to_string(row.size()) + " cells, table has " +
                                                        std::to_string(columns_.size()) + " columns");
    for (const auto &v : row)
        if (const auto *d = std::get_if<double>(&v); d && !std::isfinite(*d))
            throw Error(ErrorKind::serialization_error, "non-finite numeric cell");
    rows_.push_back(std::move(row));
}

std::size_t ResultTable::column(const std::string &name) const
{
    for (std::size_t c = 0; c < columns_.size(); ++c)
        if (columns_[c] == name)
            return c;
    throw Error(ErrorKind::format_error, "no column named '" + name + "'");
}

double ResultTable::number(std::size_t row, std::size_t col) const
{
    const TableValue &v = at(row, col);
    if (const auto *i = std::get_if<std::int64_t>(&v))
        return static_cast<double>(*i);
    if (const auto *d = std::get_if<double>(&v))
        return *d;
    throw Error(ErrorKind::format_error, "cell (" + std::to_string(row) + ", " + std::to_string(col) +
                                             ") is not numeric");
}

std::string to_csv(const ResultTable &table)
{
    std::string out;
    auto emit = [&out](const std::vector<std::string> &cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            if (c)
                out += ',';
            out += cells[c];
        }
        out += "\r\n";
    };
    std::vector<std::string> header;
    for (const auto &name : table.columns())
        header.push_back(quote_if_needed(name));
    emit(header);
    for (const auto &row : table.rows())
    {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (const auto &v : row)
            cells.push_back(format_cell(v));
        emit(cells);
    }
    return out;
}

ResultTable from_csv(const std::string &text)
{
    auto records = split_records(text);
    if (records.empty())
        throw Error(ErrorKind::format_error, "CSV has no header line");
    std::vector<std::string> columns;
    for (auto &f : records.front())
        columns.push_back(std::move(f.text));
    ResultTable table(std::move(columns));
    for (std::size_t r = 1; r < records.size(); ++r)
    {
        if (records[r].size() != table.columns().size())
            throw Error(ErrorKind::format_error, "CSV record " + std::to_string(r) + " has " +
                                                     std::to_string(records[r].size()) + " fields, expected " +
                                                     std::to_string(table.columns().size()));
        std::vector<TableValue> row;
        row.reserve(records[r].size());
        for (auto &f : records[r])
        {
            std::optional<TableValue> num;
            if (!f.quoted)
                num = parse_number(f.text);
            row.push_back(num ? *num : TableValue(std::move(f.text)));
        }
        table.add_row(std::move(row));
    }
    return table;
}

void write_table(const ResultTable &table, const std::filesystem::path &path)
{
    const std::string text = to_csv(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io_error, "cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out)
        throw Error(ErrorKind::io_error, "write to '" + path.string() + "' failed");
}

ResultTable read_table(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_csv(ss.str());
}

} // namespace areamimo
