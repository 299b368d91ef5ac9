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
#include <random>

namespace areamimo
{

/// Seeded pseudo-random source used everywhere randomness enters the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distribution transforms are implemented here rather than
/// taken from <random>, because the standard distributions are allowed to
/// differ between library vendors; this keeps seeded results identical
/// across toolchains.
///
/// Independent substreams are derived with `Rng::substream(seed, index)`: the
/// engine seed is splitmix64(seed) mixed with splitmix64(index). Synthesis
/// draws one substream per stationary point in row-major order, so changing
/// the antenna count only appends draws to each substream.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng substream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); unbiased via rejection. Requires n > 0.
    std::uint64_t below(std::uint64_t n);

    /// Circularly-symmetric complex Gaussian CN(0, variance).
    std::complex<double> complex_normal(double variance = 1.0);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

} // namespace areamimo
