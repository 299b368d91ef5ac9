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

#include "areamimo/channel_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "areamimo/error.hpp"

namespace areamimo
{

namespace
{

using nlohmann::json;

constexpr const char *map_magic = "areamimo-channel-map";
constexpr const char *centroid_magic = "areamimo-centroids";
constexpr const char *meta_suffix = ".meta.json";
constexpr const char *payload_suffix = ".payload.bin";

bool ends_with(const std::string &s, const std::string &suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void put_f64le(char *out, double v)
{
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b)
        out[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
}

double get_f64le(const char *in)
{
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[b])) << (8 * b);
    return std::bit_cast<double>(bits);
}

void write_file(const std::filesystem::path &p, const std::string &bytes)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io_error, "cannot open '" + p.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorKind::io_error, "write to '" + p.string() + "' failed");
}

std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot open '" + p.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw Error(ErrorKind::io_error, "read from '" + p.string() + "' failed");
    return std::move(ss).str();
}

json parse_meta(const std::filesystem::path &p, const char *magic)
{
    json meta;
    try
    {
        meta = json::parse(read_file(p));
    }
    catch (const json::parse_error &e)
    {
        throw Error(ErrorKind::format_error, "'" + p.string() + "' is not valid JSON: " + e.what());
    }
    if (!meta.is_object())
        throw Error(ErrorKind::format_error, "metadata must be a JSON object");
    if (!meta.contains("format") || meta["format"] != magic)
        throw Error(ErrorKind::format_error, std::string("metadata 'format' must be \"") + magic + "\"");
    if (!meta.contains("format_version") || !meta["format_version"].is_number_integer())
        throw Error(ErrorKind::format_error, "metadata lacks integer 'format_version'");
    if (meta["format_version"].get<long long>() != channel_map_format_version)
        throw Error(ErrorKind::format_error,
                    "unsupported format_version " + meta["format_version"].dump() + " (expected 1)");
    if (!meta.contains("payload_dtype") || meta["payload_dtype"] != "c128le")
        throw Error(ErrorKind::format_error, "payload_dtype must be \"c128le\"");
    return meta;
}

std::size_t require_count(const json &meta, const char *key)
{
    if (!meta.contains(key) || !meta[key].is_number_integer())
        throw Error(ErrorKind::format_error, std::string("metadata field '") + key + "' must be an integer");
    const auto v = meta[key].get<long long>();
    if (v < 1)
        throw Error(ErrorKind::format_error, std::string("metadata field '") + key + "' must be >= 1, got " +
                                                 std::to_string(v));
    return static_cast<std::size_t>(v);
}

double require_number(const json &meta, const char *key)
{
    if (!meta.contains(key) || !meta[key].is_number())
        throw Error(ErrorKind::format_error, std::string("metadata field '") + key + "' must be a number");
    const double v = meta[key].get<double>();
    if (!std::isfinite(v))
        throw Error(ErrorKind::format_error, std::string("metadata field '") + key + "' must be finite");
    return v;
}

std::size_t checked_payload_bytes(std::size_t rows, std::size_t cols)
{
    constexpr std::size_t max = std::numeric_limits<std::size_t>::max();
    if (rows > max / cols || rows * cols > max / 16)
        throw Error(ErrorKind::format_error, "payload dimensions overflow");
    return rows * cols * 16;
}

CMatrix read_payload(const std::filesystem::path &p, std::size_t rows, std::size_t cols)
{
    const std::size_t expected = checked_payload_bytes(rows, cols);
    std::error_code ec;
    const auto actual = std::filesystem::file_size(p, ec);
    if (ec)
        throw Error(ErrorKind::io_error, "cannot stat payload '" + p.string() + "': " + ec.message());
    if (actual != expected)
        throw Error(ErrorKind::format_error, "payload '" + p.string() + "' has " + std::to_string(actual) +
                                                 " bytes, expected " + std::to_string(expected));
    return decode_c128le(read_file(p), rows, cols);
}

} // namespace

std::string encode_c128le(const CMatrix &m)
{
    std::string bytes(static_cast<std::size_t>(m.size()) * 16, '\0');
    char *out = bytes.data();
    // Row-major storage already matches the position-major, antenna-minor order.
    const cd *data = m.data();
    for (Eigen::Index k = 0; k < m.size(); ++k, out += 16)
    {
        put_f64le(out, data[k].real());
        put_f64le(out + 8, data[k].imag());
    }
    return bytes;
}

CMatrix decode_c128le(const std::string &bytes, std::size_t rows, std::size_t cols)
{
    const std::size_t expected = checked_payload_bytes(rows, cols);
    if (bytes.size() != expected)
        throw Error(ErrorKind::format_error, "payload has " + std::to_string(bytes.size()) + " bytes, expected " +
                                                 std::to_string(expected));
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    cd *data = m.data();
    const char *in = bytes.data();
    for (Eigen::Index k = 0; k < m.size(); ++k, in += 16)
    {
        data[k] = {get_f64le(in), get_f64le(in + 8)};
        if (!std::isfinite(data[k].real()) || !std::isfinite(data[k].imag()))
            throw Error(ErrorKind::format_error, "non-finite payload value at flat index " + std::to_string(k));
    }
    return m;
}

MapFilePaths map_file_paths(const std::filesystem::path &path)
{
    std::string base = path.string();
    if (ends_with(base, meta_suffix))
        base.resize(base.size() - std::strlen(meta_suffix));
    else if (ends_with(base, payload_suffix))
        base.resize(base.size() - std::strlen(payload_suffix));
    return {base + meta_suffix, base + payload_suffix};
}

void write_map(const ChannelMap &map, const std::filesystem::path &path)
{
    const auto files = map_file_paths(path);
    const GridSpec &g = map.grid();
    json meta = {
        {"format", map_magic},
        {"format_version", channel_map_format_version},
        {"nx", g.nx},
        {"ny", g.ny},
        {"delta_m", g.delta},
        {"x0", g.x0},
        {"y0", g.y0},
        {"fc_hz", map.carrier().fc()},
        {"M", map.antennas()},
        {"row_order", "row-major"},
        {"payload_dtype", "c128le"},
        {"source", to_string(map.provenance().source)},
    };
    if (map.provenance().seed)
        meta["seed"] = *map.provenance().seed;
    try
    {
        meta["params"] = json::parse(map.provenance().params_json);
    }
    catch (const json::parse_error &e)
    {
        throw Error(ErrorKind::serialization_error, std::string("provenance params are not JSON: ") + e.what());
    }
    write_file(files.meta, meta.dump(2) + "\n");
    write_file(files.payload, encode_c128le(map.coeffs()));
}

ChannelMap read_map(const std::filesystem::path &path)
{
    const auto files = map_file_paths(path);
    const json meta = parse_meta(files.meta, map_magic);

    GridSpec grid;
    grid.nx = require_count(meta, "nx");
    grid.ny = require_count(meta, "ny");
    grid.delta = require_number(meta, "delta_m");
    grid.x0 = require_number(meta, "x0");
    grid.y0 = require_number(meta, "y0");
    if (!(grid.delta > 0.0))
        throw Error(ErrorKind::format_error, "delta_m must be positive");
    const double fc = require_number(meta, "fc_hz");
    if (!(fc > 0.0))
        throw Error(ErrorKind::format_error, "fc_hz must be positive");
    const std::size_t M = require_count(meta, "M");
    if (!meta.contains("row_order") || meta["row_order"] != "row-major")
        throw Error(ErrorKind::format_error, "row_order must be \"row-major\"");
    if (!meta.contains("source") || !meta["source"].is_string())
        throw Error(ErrorKind::format_error, "metadata lacks string 'source'");

    MapProvenance prov;
    prov.source = map_source_from_string(meta["source"].get<std::string>());
    if (meta.contains("seed"))
    {
        if (!meta["seed"].is_number_unsigned())
            throw Error(ErrorKind::format_error, "seed must be a non-negative integer");
        prov.seed = meta["seed"].get<std::uint64_t>();
    }
    if (meta.contains("params"))
    {
        if (!meta["params"].is_object())
            throw Error(ErrorKind::format_error, "params must be a JSON object");
        prov.params_json = meta["params"].dump();
    }

    CMatrix coeffs = read_payload(files.payload, grid.cell_count(), M);
    return ChannelMap(grid, CarrierSpec(fc), std::move(coeffs), std::move(prov));
}

void write_centroids(const CMatrix &centroids, const std::filesystem::path &path)
{
    const auto files = map_file_paths(path);
    json meta = {{"format", centroid_magic},
                 {"format_version", channel_map_format_version},
                 {"k", centroids.rows()},
                 {"M", centroids.cols()},
                 {"payload_dtype", "c128le"}};
    write_file(files.meta, meta.dump(2) + "\n");
    write_file(files.payload, encode_c128le(centroids));
}

CMatrix read_centroids(const std::filesystem::path &path)
{
    const auto files = map_file_paths(path);
    const json meta = parse_meta(files.meta, centroid_magic);
    return read_payload(files.payload, require_count(meta, "k"), require_count(meta, "M"));
}

} // namespace areamimo
