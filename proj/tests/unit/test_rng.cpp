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

#include <array>
#include <cmath>

#include "areamimo/rng.hpp"

using namespace areamimo;

TEST_CASE("engine output is the standard mt19937_64 sequence", "[rng]")
{
    Rng rng(5489);
    for (int i = 0; i < 9999; ++i)
        rng.next_u64();
    // 10000th output of the default-seeded engine, fixed by the C++ standard.
    REQUIRE(rng.next_u64() == 9981545732273789042ULL);
}

TEST_CASE("below is in range and roughly uniform", "[rng][property]")
{
    Rng rng(1);
    std::array<int, 7> counts{};
    for (int i = 0; i < 70000; ++i)
    {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        ++counts[v];
    }
    for (int c : counts)
        REQUIRE(std::abs(c - 10000) < 500);
    REQUIRE(rng.below(1) == 0);
}

TEST_CASE("uniform lies in [0, 1)", "[rng][property]")
{
    Rng rng(2);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i)
    {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    REQUIRE(std::abs(sum / 100000 - 0.5) < 0.01);
}

TEST_CASE("complex normal moments", "[rng][property]")
{
    Rng rng(3);
    const int n = 200000;
    double power = 0.0, re = 0.0, im = 0.0, cross = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const auto z = rng.complex_normal(2.0);
        power += std::norm(z);
        re += z.real();
        im += z.imag();
        cross += z.real() * z.imag();
    }
    REQUIRE(std::abs(power / n - 2.0) < 0.03);
    REQUIRE(std::abs(re / n) < 0.01);
    REQUIRE(std::abs(im / n) < 0.01);
    REQUIRE(std::abs(cross / n) < 0.01);
}

TEST_CASE("substreams are reproducible and distinct", "[rng]")
{
    auto a = Rng::substream(7, 0);
    auto b = Rng::substream(7, 0);
    auto c = Rng::substream(7, 1);
    auto d = Rng::substream(8, 0);
    const auto va = a.next_u64();
    REQUIRE(va == b.next_u64());
    REQUIRE(va != c.next_u64());
    REQUIRE(va != d.next_u64());
}
