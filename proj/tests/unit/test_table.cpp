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
#include <cmath>
#include <limits>

#include "areamimo/error.hpp"
#include "areamimo/rng.hpp"
#include "areamimo/table.hpp"
#include "test_support.hpp"

using namespace areamimo;

TEST_CASE("doubles are written in shortest round-trip form", "[table]")
{
    REQUIRE(format_double(1.0) == "1.0");
    REQUIRE(format_double(0.1) == "0.1");
    REQUIRE(format_double(-2.5e-300) == "-2.5e-300");
    REQUIRE(format_double(1e21) == "1e+21");
    REQUIRE(format_double(-0.0) == "-0.0");
}

TEST_CASE("CSV layout", "[table]")
{
    ResultTable t({"k", "rate", "mode"});
    t.add_row({std::int64_t{10}, 0.5, std::string("literal")});
    t.add_row({std::int64_t{-3}, 2.0, std::string("a,\"b\"")});
    REQUIRE(to_csv(t) == "k,rate,mode\r\n10,0.5,literal\r\n-3,2.0,\"a,\"\"b\"\"\"\r\n");
}

TEST_CASE("strings that look numeric keep their type", "[table]")
{
    ResultTable t({"s"});
    t.add_row({std::string("42")});
    t.add_row({std::string("1e5")});
    t.add_row({std::string("")});
    const auto back = from_csv(to_csv(t));
    REQUIRE(back == t);
}

TEST_CASE("CSV round-trip is value-exact", "[table][roundtrip]")
{
    Rng rng(2024);
    ResultTable t({"k", "M", "q_percent", "mode", "rate", "seed"});
    for (int r = 0; r < 500; ++r)
    {
        double v;
        do
            v = std::bit_cast<double>(rng.next_u64());
        while (!std::isfinite(v));
        t.add_row({static_cast<std::int64_t>(rng.next_u64()), std::int64_t{64}, rng.uniform() * 100.0,
                   std::string(r % 2 ? "top-q" : "literal"), v, std::numeric_limits<std::int64_t>::min() + r});
    }
    test::TempDir dir;
    write_table(t, dir.path() / "t.csv");
    const auto back = read_table(dir.path() / "t.csv");
    REQUIRE(back == t);
    for (std::size_t r = 0; r < t.row_count(); ++r)
        REQUIRE(std::bit_cast<std::uint64_t>(std::get<double>(back.at(r, 4))) ==
                std::bit_cast<std::uint64_t>(std::get<double>(t.at(r, 4))));
    REQUIRE(to_csv(back) == to_csv(t));
}

TEST_CASE("reader accepts LF line ends and quoted newlines", "[table]")
{
    const auto t = from_csv("a,b\n1,\"x\ny\"\n2,3.5\n");
    REQUIRE(t.row_count() == 2);
    REQUIRE(std::get<std::string>(t.at(0, 1)) == "x\ny");
    REQUIRE(t.number(1, "b") == 3.5);
    REQUIRE(t.number(0, "a") == 1.0);
}

TEST_CASE("table errors", "[table][errors]")
{
    ResultTable t({"a", "b"});
    REQUIRE_THROWS_AS(t.add_row({1.0}), Error);
    REQUIRE_THROWS_AS(t.add_row({1.0, std::numeric_limits<double>::infinity()}), Error);
    REQUIRE_THROWS_AS(t.column("c"), Error);
    REQUIRE_THROWS_AS(from_csv("a,b\r\n1\r\n"), Error);
    REQUIRE_THROWS_AS(from_csv("a\r\n\"unterminated\r\n"), Error);
    try
    {
        read_table("/nonexistent/table.csv");
        FAIL("expected IoError");
    }
    catch (const Error &e)
    {
        REQUIRE(e.kind() == ErrorKind::io_error);
    }
}
