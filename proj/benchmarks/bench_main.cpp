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

#include <benchmark/benchmark.h>

#include "areamimo/channel_synth.hpp"
#include "areamimo/clustering.hpp"
#include "areamimo/rate_eval.hpp"
#include "areamimo/region_detect.hpp"

using namespace areamimo;

namespace
{

const ChannelMap &nlos_map()
{
    static const ChannelMap map = [] {
        NlosParams p;
        p.seed = 1;
        return synth_nlos(p, 64, CarrierSpec(2.4e9));
    }();
    return map;
}

void BM_SynthNlos(benchmark::State &state)
{
    NlosParams p;
    for (auto _ : state)
    {
        p.seed++;
        benchmark::DoNotOptimize(synth_nlos(p, static_cast<std::size_t>(state.range(0)), CarrierSpec(2.4e9)));
    }
}
BENCHMARK(BM_SynthNlos)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State &state)
{
    const ChannelMap &map = nlos_map();
    KMeansOptions o;
    o.k = static_cast<std::size_t>(state.range(0));
    o.init = KMeansInit::plus_plus;
    for (auto _ : state)
    {
        o.seed++;
        benchmark::DoNotOptimize(kmeans(map, o));
    }
}
BENCHMARK(BM_KMeans)->Arg(10)->Arg(50)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_ClusterSir(benchmark::State &state)
{
    const ChannelMap &map = nlos_map();
    KMeansOptions o;
    o.k = static_cast<std::size_t>(state.range(0));
    const Clustering c = kmeans(map, o);
    const PrecodingMatrix w = mr_precoder(c);
    for (auto _ : state)
        benchmark::DoNotOptimize(cluster_sir(map, c, w, SirOptions{}));
}
BENCHMARK(BM_ClusterSir)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_RankTrackerProbe(benchmark::State &state)
{
    const ChannelMap &map = nlos_map();
    RankTracker tracker(map.antennas(), 0.01);
    for (std::size_t n = 0; n < 20; ++n)
        tracker.add(map.row(n));
    std::size_t n = 20;
    for (auto _ : state)
        benchmark::DoNotOptimize(tracker.rank_with(map.row(n++ % map.positions())));
}
BENCHMARK(BM_RankTrackerProbe);

void BM_RankSvd(benchmark::State &state)
{
    const ChannelMap &map = nlos_map();
    const CMatrix rows = map.coeffs().topRows(21);
    const RankPolicy policy;
    for (auto _ : state)
        benchmark::DoNotOptimize(effective_rank(rows, policy));
}
BENCHMARK(BM_RankSvd);

void BM_SpiralGrow(benchmark::State &state)
{
    const ChannelMap &map = nlos_map();
    const CellMask claimed(map.grid());
    for (auto _ : state)
        benchmark::DoNotOptimize(spiral_grow(map, {70, 70}, RankPolicy{}, claimed));
}
BENCHMARK(BM_SpiralGrow)->Unit(benchmark::kMillisecond);

void BM_EnergyMap(benchmark::State &state)
{
    const ChannelMap &map = nlos_map();
    for (auto _ : state)
        benchmark::DoNotOptimize(energy_map(map, Cell{70, 70}));
}
BENCHMARK(BM_EnergyMap)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
