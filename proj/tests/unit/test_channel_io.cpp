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

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "areamimo/channel_io.hpp"
#include "areamimo/channel_synth.hpp"
#include "areamimo/error.hpp"
#include "areamimo/rng.hpp"
#include "test_support.hpp"

using namespace areamimo;

namespace
{

ChannelMap random_map(std::uint64_t seed)
{
    Rng rng(seed);
    GridSpec g;
    g.nx = 1 + rng.below(9);
    g.ny = 1 + rng.below(9);
    g.delta = 0.001 + rng.uniform();
    g.x0 = rng.uniform() * 10.0 - 5.0;
    g.y0 = rng.uniform() * 10.0 - 5.0;
    const std::size_t M = 1 + rng.below(12);
    CMatrix c(static_cast<Eigen::Index>(g.cell_count()), static_cast<Eigen::Index>(M));
    for (Eigen::Index r = 0; r < c.rows(); ++r)
        for (Eigen::Index m = 0; m < c.cols(); ++m)
        {
            // Raw bit patterns exercise every mantissa bit, not only Gaussians.
            double re, im;
            do
                re = std::bit_cast<double>(rng.next_u64());
            while (!std::isfinite(re));
            im = rng.complex_normal(1.0).imag() * 1e-300;
            c(r, m) = {re, im};
        }
    MapProvenance prov;
    prov.source = seed % 2 ? MapSource::measured : MapSource::synthetic_nlos;
    if (seed % 3)
        prov.seed = seed * 0x9e3779b97f4a7c15ULL;
    prov.params_json = R"({"L":20,"alpha":1.0})";
    return ChannelMap(g, CarrierSpec(1e9 + rng.uniform() * 5e9), std::move(c), prov);
}

void rewrite_meta(const std::filesystem::path &base, const std::function<void(nlohmann::json &)> &edit)
{
    const auto paths = map_file_paths(base);
    nlohmann::json j = nlohmann::json::parse(test::slurp(paths.meta));
    edit(j);
    test::spit(paths.meta, j.dump());
}

ErrorKind read_error(const std::filesystem::path &base)
{
    try
    {
        read_map(base);
    }
    catch (const Error &e)
    {
        return e.kind();
    }
    FAIL("read_map succeeded");
    return ErrorKind::config_error;
}

} // namespace

TEST_CASE("payload codec is little-endian binary64 pairs", "[channel-io]")
{
    CMatrix m(1, 1);
    m(0, 0) = {1.0, -2.0};
    const std::string bytes = encode_c128le(m);
    REQUIRE(bytes.size() == 16);
    const unsigned char expect[16] = {0, 0, 0, 0, 0, 0, 0xf0, 0x3f, 0, 0, 0, 0, 0, 0, 0x00, 0xc0};
    REQUIRE(std::memcmp(bytes.data(), expect, 16) == 0);
    REQUIRE(decode_c128le(bytes, 1, 1) == m);
    REQUIRE_THROWS_AS(decode_c128le(bytes, 2, 1), Error);
}

TEST_CASE("write_map / read_map is bit-exact", "[channel-io][roundtrip]")
{
    test::TempDir dir;
    for (std::uint64_t s = 0; s < 50; ++s)
    {
        const ChannelMap map = random_map(s);
        const auto base = dir.path() / ("map" + std::to_string(s));
        write_map(map, base);
        const ChannelMap back = read_map(base);
        REQUIRE(back.grid() == map.grid());
        REQUIRE(back.carrier() == map.carrier());
        REQUIRE(back.provenance().source == map.provenance().source);
        REQUIRE(back.provenance().seed == map.provenance().seed);
        REQUIRE(nlohmann::json::parse(back.provenance().params_json) ==
                nlohmann::json::parse(map.provenance().params_json));
        REQUIRE(test::bit_equal(back.coeffs(), map.coeffs()));
    }
}

TEST_CASE("either container file names the map", "[channel-io]")
{
    test::TempDir dir;
    const auto map = random_map(7);
    write_map(map, dir.path() / "m");
    REQUIRE(std::filesystem::exists(dir.path() / "m.meta.json"));
    REQUIRE(std::filesystem::exists(dir.path() / "m.payload.bin"));
    REQUIRE(test::bit_equal(read_map(dir.path() / "m.meta.json").coeffs(), map.coeffs()));
    REQUIRE(test::bit_equal(read_map(dir.path() / "m.payload.bin").coeffs(), map.coeffs()));
}

TEST_CASE("read_map rejects malformed containers", "[channel-io][errors]")
{
    test::TempDir dir;
    const auto map = random_map(4);
    const auto base = dir.path() / "m";
    auto fresh = [&] { write_map(map, base); };

    SECTION("missing files")
    {
        REQUIRE(read_error(dir.path() / "absent") == ErrorKind::io_error);
        fresh();
        std::filesystem::remove(map_file_paths(base).payload);
        REQUIRE(read_error(base) == ErrorKind::io_error);
    }
    SECTION("truncated payload names both sizes")
    {
        fresh();
        const auto p = map_file_paths(base).payload;
        std::string bytes = test::slurp(p);
        const auto expected = bytes.size();
        bytes.resize(bytes.size() - 3);
        test::spit(p, bytes);
        try
        {
            read_map(base);
            FAIL("expected FormatError");
        }
        catch (const Error &e)
        {
            REQUIRE(e.kind() == ErrorKind::format_error);
            const std::string what = e.what();
            REQUIRE(what.find(std::to_string(expected)) != std::string::npos);
            REQUIRE(what.find(std::to_string(expected - 3)) != std::string::npos);
        }
    }
    SECTION("metadata violations")
    {
        const std::vector<std::function<void(nlohmann::json &)>> edits = {
            [](nlohmann::json &j) { j["format"] = "something-else"; },
            [](nlohmann::json &j) { j["format_version"] = 2; },
            [](nlohmann::json &j) { j["payload_dtype"] = "c64be"; },
            [](nlohmann::json &j) { j["row_order"] = "column-major"; },
            [](nlohmann::json &j) { j["nx"] = 0; },
            [](nlohmann::json &j) { j["nx"] = -3; },
            [](nlohmann::json &j) { j["nx"] = 2.5; },
            [](nlohmann::json &j) { j["delta_m"] = -1.0; },
            [](nlohmann::json &j) { j["fc_hz"] = 0.0; },
            [](nlohmann::json &j) { j["M"] = "four"; },
            [](nlohmann::json &j) { j.erase("ny"); },
            [](nlohmann::json &j) { j["source"] = "imaginary"; },
            [](nlohmann::json &j) { j["M"] = j["M"].get<int>() + 1; },
        };
        for (std::size_t e = 0; e < edits.size(); ++e)
        {
            INFO("edit " << e);
            fresh();
            rewrite_meta(base, edits[e]);
            REQUIRE(read_error(base) == ErrorKind::format_error);
        }
    }
    SECTION("metadata is not JSON")
    {
        fresh();
        test::spit(map_file_paths(base).meta, "{ not json");
        REQUIRE(read_error(base) == ErrorKind::format_error);
    }
    SECTION("non-finite payload values")
    {
        fresh();
        const auto p = map_file_paths(base).payload;
        std::string bytes = test::slurp(p);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        std::memcpy(bytes.data(), &nan, 8);
        test::spit(p, bytes);
        REQUIRE(read_error(base) == ErrorKind::format_error);
    }
}

TEST_CASE("centroid container round-trips", "[channel-io][roundtrip]")
{
    test::TempDir dir;
    const CMatrix c = random_map(12).coeffs().topRows(2);
    write_centroids(c, dir.path() / "c");
    REQUIRE(test::bit_equal(read_centroids(dir.path() / "c"), c));
    // A channel map is not a centroid file.
    write_map(random_map(13), dir.path() / "m");
    REQUIRE_THROWS_AS(read_centroids(dir.path() / "m"), Error);
}

TEST_CASE("writing into a missing directory is an IoError", "[channel-io][errors]")
{
    try
    {
        write_map(random_map(1), "/nonexistent-dir/for/sure/m");
        FAIL("expected IoError");
    }
    catch (const Error &e)
    {
        REQUIRE(e.kind() == ErrorKind::io_error);
    }
}
