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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "areamimo/channel_synth.hpp"
#include "areamimo/error.hpp"
#include "areamimo/rate_eval.hpp"
#include "areamimo/rng.hpp"

using namespace areamimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

ChannelMap map_of(const CMatrix &rows, double delta = 0.5)
{
    GridSpec g;
    g.nx = static_cast<std::size_t>(rows.rows());
    g.ny = 1;
    g.delta = delta;
    return ChannelMap(g, CarrierSpec(1e9), rows);
}

Clustering identity_clustering(const CMatrix &rows)
{
    Clustering c;
    c.k = static_cast<std::size_t>(rows.rows());
    c.centroids = rows;
    for (std::size_t p = 0; p < c.k; ++p)
        c.assignment.push_back(static_cast<std::uint32_t>(p));
    return c;
}

ClusterRates rates_of(std::vector<double> r)
{
    ClusterRates cr;
    cr.rates = r;
    std::sort(r.begin(), r.end());
    cr.sorted_rates = r;
    return cr;
}

ErrorKind kind_of(const std::function<void()> &f)
{
    try
    {
        f();
    }
    catch (const Error &e)
    {
        return e.kind();
    }
    return ErrorKind::config_error;
}

} // namespace

TEST_CASE("hand-computed 2 x 2 SIR", "[rate-eval][oracle]")
{
    CMatrix h(2, 2);
    h << cd(1, 0), cd(0, 0), cd(0.5, 0), cd(0, 1);
    const auto map = map_of(h);
    const auto c = identity_clustering(h);
    const auto P = mr_precoder(c);
    REQUIRE(P.columns.rows() == 2);
    REQUIRE(P.columns(1, 1) == cd(0, -1));

    const auto r = cluster_sir(map, c, P);
    // SIR_1 = |h1 h1^H|^2 / |h1 h2^H|^2 = 1 / 0.25
    REQUIRE_THAT(r[0].sir[0], WithinRel(4.0, 1e-15));
    // SIR_2 = |h2|^4 / |h2 h1^H|^2 = 1.25^2 / 0.25
    REQUIRE_THAT(r[1].sir[0], WithinRel(6.25, 1e-15));
    REQUIRE_THAT(r[0].rates[0], WithinRel(std::log2(5.0), 1e-15));
    REQUIRE_THAT(r[1].rates[0], WithinRel(std::log2(7.25), 1e-15));

    const auto report = rate_report(map, c, r, 0.5);
    REQUIRE_THAT(report.per_cluster_rate_bpcu, WithinRel(0.5 * (std::log2(5.0) + std::log2(7.25)), 1e-15));
    REQUIRE_THAT(report.density_per_m2, WithinRel(2.0 / (2 * 0.25), 1e-15));
    REQUIRE_THAT(report.area_rate_bpcu_per_m2, WithinRel(report.density_per_m2 * report.per_cluster_rate_bpcu, 1e-15));
}

TEST_CASE("orthogonal beams hit the cap, zero signal gives zero", "[rate-eval]")
{
    CMatrix h(3, 2);
    h << cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0), cd(0, 0), cd(0, 0);
    const auto map = map_of(h);
    Clustering c;
    c.k = 2;
    c.centroids = h.topRows(2);
    c.assignment = {0, 1, 0};
    const auto r = cluster_sir(map, c, mr_precoder(c));
    REQUIRE(r[0].sir[0] == 1e9);
    REQUIRE(r[1].sir[0] == 1e9);
    REQUIRE(r[0].capped == 1);
    REQUIRE(r[0].sir[1] == 0.0);
    REQUIRE(r[0].rates[1] == 0.0);
    REQUIRE_THAT(r[1].rates[0], WithinAbs(std::log2(1.0 + 1e9), 1e-12));
    REQUIRE(area_throughput(map, c, 0.5).capped == 2);

    SirOptions opt;
    opt.cap = 100.0;
    const auto capped = cluster_sir(map, c, mr_precoder(c), opt);
    REQUIRE(capped[0].sir[0] == 100.0);
}

TEST_CASE("SIR invariances", "[rate-eval][property]")
{
    Rng rng(3);
    CMatrix h(12, 4);
    for (Eigen::Index r = 0; r < h.rows(); ++r)
        for (Eigen::Index m = 0; m < h.cols(); ++m)
            h(r, m) = rng.complex_normal(1.0);
    const auto map = map_of(h);
    KMeansOptions opt;
    opt.k = 3;
    opt.seed = 4;
    const auto c = kmeans(map, opt);
    const auto base = cluster_sir(map, c, mr_precoder(c));

    Clustering scaled = c;
    scaled.centroids *= cd(-2.0, 0.7);
    const auto s1 = cluster_sir(map, scaled, mr_precoder(scaled));

    const auto map2 = map_of(h * cd(0.0, 3.0));
    Clustering c2 = c;
    const auto s2 = cluster_sir(map2, c2, mr_precoder(c2));

    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t n = 0; n < base[j].sir.size(); ++n)
        {
            REQUIRE_THAT(s1[j].sir[n], WithinRel(base[j].sir[n], 1e-12));
            REQUIRE_THAT(s2[j].sir[n], WithinRel(base[j].sir[n], 1e-12));
            REQUIRE(base[j].rates[n] >= 0.0);
            REQUIRE((base[j].rates[n] == 0.0) == (base[j].sir[n] == 0.0));
        }
}

TEST_CASE("k = N tessellation is finite under the cap", "[rate-eval][property]")
{
    NlosParams p;
    p.sx = p.sy = 1;
    p.L = 4;
    const auto map = synth_nlos(p, 4, CarrierSpec(2.4e9));
    KMeansOptions opt;
    opt.k = map.positions();
    const auto c = kmeans(map, opt);
    const auto r = area_throughput(map, c, 0.5);
    REQUIRE(std::isfinite(r.area_rate_bpcu_per_m2));
    REQUIRE(r.area_rate_bpcu_per_m2 >= 0.0);
}

TEST_CASE("percentile indexing", "[rate-eval]")
{
    const auto cr = rates_of({7, 1, 3, 10, 2, 5, 4, 9, 8, 6});
    REQUIRE(percentile_rate(cr, 0.05) == 1.0);
    REQUIRE(percentile_rate(cr, 0.05, PercentileMode::top_q) == 10.0);
    REQUIRE(percentile_rate(cr, 0.5) == 5.0);
    REQUIRE(percentile_rate(cr, 0.5, PercentileMode::top_q) == 6.0);
    REQUIRE(percentile_rate(cr, 0.95) == 9.0);
    REQUIRE(percentile_rate(cr, 0.95, PercentileMode::top_q) == 2.0);
    REQUIRE(percentile_rate(cr, 1.0) == 10.0);
    REQUIRE(percentile_rate(cr, 1.0, PercentileMode::top_q) == 1.0);

    const auto single = rates_of({3.5});
    for (double q : {0.01, 0.5, 1.0})
        for (auto mode : {PercentileMode::literal, PercentileMode::top_q})
            REQUIRE(percentile_rate(single, q, mode) == 3.5);

    REQUIRE(kind_of([&] { percentile_rate(rates_of({}), 0.5); }) == ErrorKind::empty_cluster);
    REQUIRE(kind_of([&] { percentile_rate(cr, 0.0); }) == ErrorKind::invalid_params);
    REQUIRE(kind_of([&] { percentile_rate(cr, 1.5); }) == ErrorKind::invalid_params);
    REQUIRE(percentile_mode_from_string("top-q") == PercentileMode::top_q);
    REQUIRE(kind_of([] { percentile_mode_from_string("median"); }) == ErrorKind::invalid_params);
}

TEST_CASE("SIR needs two clusters", "[rate-eval][errors]")
{
    CMatrix h(2, 2);
    h << cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0);
    const auto map = map_of(h);
    Clustering c;
    c.k = 1;
    c.centroids = h.topRows(1);
    c.assignment = {0, 0};
    REQUIRE(kind_of([&] { cluster_sir(map, c, mr_precoder(c)); }) == ErrorKind::single_cluster_sir);
}

TEST_CASE("subset density uses the clustered cell count", "[rate-eval]")
{
    NlosParams p;
    p.sx = p.sy = 2;
    p.L = 4;
    const auto map = synth_nlos(p, 8, CarrierSpec(2.4e9));
    std::vector<std::size_t> subset(20);
    std::iota(subset.begin(), subset.end(), std::size_t{5});
    KMeansOptions opt;
    opt.k = 4;
    const auto c = kmeans(map, subset, opt);
    const auto r = area_throughput(map, c, 0.5);
    REQUIRE_THAT(r.density_per_m2, WithinRel(4.0 / (20.0 * map.grid().cell_area()), 1e-15));
}

TEST_CASE("LoS energy map peaks at the focus", "[rate-eval][property]")
{
    GridSpec g;
    g.nx = 41;
    g.ny = 21;
    g.delta = 0.05;
    const CarrierSpec carrier(2.4e9);
    const auto map = synth_los(g, carrier, default_los_array(g, carrier, 16, 0.1));
    const Cell target{20, 8};
    const auto e = energy_map(map, target);
    REQUIRE(e.size() == map.positions());
    const auto best = static_cast<std::size_t>(std::max_element(e.begin(), e.end()) - e.begin());
    const Cell peak = g.cell(best);
    REQUIRE(std::labs(long(peak.i) - long(target.i)) <= 1);
    REQUIRE(std::labs(long(peak.j) - long(target.j)) <= 1);
    REQUIRE_THAT(e[g.index(target)], WithinRel(std::pow(map.row(target).squaredNorm(), 2), 1e-12));

    const auto same = energy_map(map, g.position(target));
    REQUIRE(same == e);
    REQUIRE(kind_of([&] { energy_map(map, Cell{41, 0}); }) == ErrorKind::out_of_bounds);
    REQUIRE(kind_of([&] { energy_map(map, Point2{-5.0, 0.0}); }) == ErrorKind::out_of_bounds);
}

TEST_CASE("sweep table layout", "[rate-eval]")
{
    auto t = make_sweep_table();
    RateReport r;
    r.k = 49;
    r.M = 64;
    r.q = 0.05;
    r.mode = PercentileMode::top_q;
    r.per_cluster_rate_bpcu = 1.5;
    r.density_per_m2 = 10.0;
    r.area_rate_bpcu_per_m2 = 15.0;
    append_report(t, r, 5.0, 7);
    REQUIRE(t.columns() == std::vector<std::string>{"k", "M", "q_percent", "mode", "per_cluster_rate_bpcu",
                                                    "density_per_m2", "area_rate_bpcu_per_m2", "seed"});
    REQUIRE(std::get<std::string>(t.at(0, 3)) == "top-q");
    REQUIRE(t.number(0, "q_percent") == 5.0);
}
