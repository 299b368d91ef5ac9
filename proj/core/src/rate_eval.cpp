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

#include "areamimo/rate_eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "areamimo/error.hpp"

namespace areamimo
{

using Index = Eigen::Index;

PrecodingMatrix mr_precoder(const Clustering &clustering)
{
    return {clustering.centroids.adjoint()};
}

std::vector<ClusterRates> cluster_sir(const ChannelMap &map, const Clustering &clustering,
                                      const PrecodingMatrix &precoder, const SirOptions &options)
{
    const std::size_t k = precoder.k();
    if (k < 2)
        throw Error(ErrorKind::single_cluster_sir, "SIR needs at least two clusters, got k = " + std::to_string(k));
    if (k != clustering.k || static_cast<std::size_t>(precoder.columns.rows()) != map.antennas())
        throw Error(ErrorKind::shape_mismatch, "precoder does not match clustering and map");
    if (!(options.cap > 0.0) || !(options.underflow_ratio >= 0.0) || !(options.noise_power >= 0.0))
        throw Error(ErrorKind::invalid_params, "invalid SIR options");

    const std::size_t n = clustering.size();
    CMatrix h(static_cast<Index>(n), static_cast<Index>(map.antennas()));
    for (std::size_t p = 0; p < n; ++p)
        h.row(static_cast<Index>(p)) = map.row(clustering.map_row(p));
    // Entry (n, j) is <h_n, c_j>; the received amplitude through beam j.
    const Eigen::MatrixXd power = (h * precoder.columns).cwiseAbs2();

    std::vector<ClusterRates> out(k);
    for (std::size_t j = 0; j < k; ++j)
        out[j].cluster_id = j;
    for (std::size_t p = 0; p < n; ++p)
    {
        const auto own = static_cast<Index>(clustering.assignment[p]);
        const double signal = power(static_cast<Index>(p), own);
        double interference = options.noise_power;
        for (Index j = 0; j < static_cast<Index>(k); ++j)
            if (j != own)
                interference += power(static_cast<Index>(p), j);

        ClusterRates &cr = out[static_cast<std::size_t>(own)];
        double sir;
        if (signal == 0.0)
            sir = 0.0;
        else if (interference < options.underflow_ratio * signal || signal / interference >= options.cap)
        {
            sir = options.cap;
            ++cr.capped;
        }
        else
            sir = signal / interference;
        cr.members.push_back(p);
        cr.sir.push_back(sir);
        cr.rates.push_back(std::log2(1.0 + sir));
    }
    for (auto &cr : out)
    {
        cr.sorted_rates = cr.rates;
        std::sort(cr.sorted_rates.begin(), cr.sorted_rates.end());
    }
    return out;
}

const char *to_string(PercentileMode mode) noexcept
{
    return mode == PercentileMode::top_q ? "top-q" : "literal";
}

PercentileMode percentile_mode_from_string(const std::string &name)
{
    if (name == "literal")
        return PercentileMode::literal;
    if (name == "top-q")
        return PercentileMode::top_q;
    throw Error(ErrorKind::invalid_params, "unknown percentile mode '" + name + "'");
}

double percentile_rate(const ClusterRates &rates, double q, PercentileMode mode)
{
    if (!(q > 0.0 && q <= 1.0))
        throw Error(ErrorKind::invalid_params, "percentile q must lie in (0, 1]");
    const std::size_t size = rates.sorted_rates.size();
    if (size == 0)
        throw Error(ErrorKind::empty_cluster, "cluster " + std::to_string(rates.cluster_id) + " has no members");
    const auto idx = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(q * static_cast<double>(size))));
    return mode == PercentileMode::literal ? rates.sorted_rates[idx - 1] : rates.sorted_rates[size - idx];
}

RateReport rate_report(const ChannelMap &map, const Clustering &clustering, const std::vector<ClusterRates> &rates,
                       double q, PercentileMode mode)
{
    RateReport r;
    r.k = clustering.k;
    r.M = map.antennas();
    r.q = q;
    r.mode = mode;
    double sum = 0.0;
    for (const auto &cr : rates)
    {
        sum += percentile_rate(cr, q, mode);
        r.capped += cr.capped;
    }
    r.per_cluster_rate_bpcu = sum / static_cast<double>(rates.size());
    const double area = static_cast<double>(clustering.size()) * map.grid().cell_area();
    r.density_per_m2 = static_cast<double>(clustering.k) / area;
    r.area_rate_bpcu_per_m2 = r.density_per_m2 * r.per_cluster_rate_bpcu;
    return r;
}

RateReport area_throughput(const ChannelMap &map, const Clustering &clustering, double q, PercentileMode mode,
                           const SirOptions &options)
{
    const auto rates = cluster_sir(map, clustering, mr_precoder(clustering), options);
    return rate_report(map, clustering, rates, q, mode);
}

std::vector<double> energy_map(const ChannelMap &map, Cell target)
{
    if (!map.grid().contains(target))
        throw Error(ErrorKind::out_of_bounds, "energy-map target (" + std::to_string(target.i) + ", " +
                                                  std::to_string(target.j) + ") lies outside the grid");
    const CVector w = map.row(target).adjoint();
    const Eigen::VectorXd e = (map.coeffs() * w).cwiseAbs2();
    return {e.data(), e.data() + e.size()};
}

std::vector<double> energy_map(const ChannelMap &map, const Point2 &target)
{
    return energy_map(map, map.grid().nearest_cell(target));
}

ResultTable make_sweep_table()
{
    return ResultTable({"k", "M", "q_percent", "mode", "per_cluster_rate_bpcu", "density_per_m2",
                        "area_rate_bpcu_per_m2", "seed"});
}

void append_report(ResultTable &table, const RateReport &r, double q_percent, std::uint64_t seed)
{
    table.add_row({static_cast<std::int64_t>(r.k), static_cast<std::int64_t>(r.M), q_percent,
                   std::string(to_string(r.mode)), r.per_cluster_rate_bpcu, r.density_per_m2, r.area_rate_bpcu_per_m2,
                   static_cast<std::int64_t>(seed)});
}

} // namespace areamimo
