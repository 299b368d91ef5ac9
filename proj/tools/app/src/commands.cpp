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

#include "areamimo/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "areamimo/channel_io.hpp"
#include "areamimo/clustering.hpp"
#include "areamimo/rate_eval.hpp"
#include "areamimo/region_detect.hpp"
#include "areamimo/stats.hpp"

namespace areamimo::app
{

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace
{

void prepare_out(const fs::path &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::io_error, "cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_text(const fs::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io_error, "cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw Error(ErrorKind::io_error, "write to '" + path.string() + "' failed");
}

void archive_config(const ExperimentConfig &config, const fs::path &dir)
{
    write_text(dir / "config.resolved.json", to_json(config));
}

template <class T> std::vector<T> sorted(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<PercentileMode> sorted_modes(std::vector<PercentileMode> v)
{
    std::sort(v.begin(), v.end(), [](PercentileMode a, PercentileMode b) {
        return std::string(to_string(a)) < std::string(to_string(b));
    });
    return v;
}

void log_line(const CommandContext &ctx, const std::string &line)
{
    if (ctx.log)
        *ctx.log << line << '\n';
}

KMeansOptions kmeans_options(const ExperimentConfig &c, std::size_t k, std::uint64_t seed)
{
    KMeansOptions o;
    o.k = k;
    o.seed = seed;
    o.max_iters = c.cluster_max_iters;
    o.init = c.cluster_init;
    return o;
}

json report_json(const RateReport &r, double q_percent)
{
    return {{"q_percent", q_percent},
            {"mode", to_string(r.mode)},
            {"per_cluster_rate_bpcu", r.per_cluster_rate_bpcu},
            {"density_per_m2", r.density_per_m2},
            {"area_rate_bpcu_per_m2", r.area_rate_bpcu_per_m2},
            {"capped", r.capped}};
}

} // namespace

int exit_code(ErrorCategory category) noexcept
{
    switch (category)
    {
    case ErrorCategory::config:
        return 2;
    case ErrorCategory::data:
        return 3;
    case ErrorCategory::numerical:
        return 4;
    }
    return 3;
}

void cmd_synth(const ExperimentConfig &config, const CommandContext &ctx)
{
    const ChannelMap map = resolve_map(config, ctx.map_override);
    prepare_out(ctx.out_dir);
    archive_config(config, ctx.out_dir);
    write_map(map, ctx.out_dir / "map");
    log_line(ctx, std::string("map: N=") + std::to_string(map.positions()) + " (" + std::to_string(map.grid().nx) +
                      " x " + std::to_string(map.grid().ny) + ") M=" + std::to_string(map.antennas()) +
                      " delta=" + format_double(map.grid().delta) + " m source=" + to_string(map.provenance().source));
}

void cmd_detect(const ExperimentConfig &config, const CommandContext &ctx)
{
    const ChannelMap map = resolve_map(config, ctx.map_override);
    const RegionSet set =
        detect_regions(map, config.detect_num_seeds, config.rank_policy, config.eta_threshold, config.detect_seed);
    prepare_out(ctx.out_dir);
    archive_config(config, ctx.out_dir);
    write_table(region_cells_table(set), ctx.out_dir / "regions.csv");

    json summary = json::parse(region_summary_json(set));
    if (config.scenario == Scenario::mixed && !ctx.map_override)
    {
        // Ground truth is known for the mixed scenario: group by seed zone.
        const RegionPredicate zone = mixed_predicate(config);
        std::vector<double> eta[2];
        json zones = json::array();
        for (const Region &r : set.regions)
        {
            const Propagation z = zone(r.seed_cell);
            eta[z == Propagation::nlos].push_back(r.eta);
            zones.push_back(to_string(z));
        }
        json by_zone = json::object();
        for (int z = 0; z < 2; ++z)
        {
            const char *name = z ? "NLoS" : "LoS";
            by_zone[name] = {{"count", eta[z].size()}};
            if (!eta[z].empty())
            {
                by_zone[name]["median_eta"] = median(eta[z]);
                by_zone[name]["mean_eta"] = mean(eta[z]);
            }
        }
        summary["seed_zone"] = zones;
        summary["by_seed_zone"] = by_zone;
    }
    write_text(ctx.out_dir / "regions_summary.json", summary.dump(2) + "\n");

    std::size_t nlos = 0;
    for (auto l : set.labels)
        nlos += l == Propagation::nlos;
    log_line(ctx, "regions: " + std::to_string(set.regions.size()) + " (" + std::to_string(set.regions.size() - nlos) +
                      " LoS, " + std::to_string(nlos) + " NLoS)");
}

void cmd_cluster(const ExperimentConfig &config, const CommandContext &ctx)
{
    const ChannelMap map = resolve_map(config, ctx.map_override);
    const Clustering c = kmeans(map, kmeans_options(config, config.cluster_k, config.cluster_seed));
    prepare_out(ctx.out_dir);
    archive_config(config, ctx.out_dir);
    write_table(clustering_table(map, c), ctx.out_dir / "clusters.csv");
    write_centroids(c.centroids, ctx.out_dir / "centroids");

    json summary = {{"k", c.k},
                    {"M", map.antennas()},
                    {"positions", c.size()},
                    {"iterations", c.iterations},
                    {"converged", c.converged},
                    {"repairs", c.repairs},
                    {"wcss", wcss(map, c)},
                    {"wcss_history", c.wcss_history},
                    {"cluster_sizes", c.cluster_sizes()}};
    if (c.k >= 2)
    {
        const auto rates = cluster_sir(map, c, mr_precoder(c), config.sir);
        ResultTable reports = make_sweep_table();
        json rj = json::array();
        for (double q : sorted(config.q_percent))
            for (auto mode : sorted_modes(config.modes))
            {
                const RateReport r = rate_report(map, c, rates, q / 100.0, mode);
                append_report(reports, r, q, config.cluster_seed);
                rj.push_back(report_json(r, q));
            }
        write_table(reports, ctx.out_dir / "cluster_reports.csv");
        summary["reports"] = rj;
    }
    write_text(ctx.out_dir / "cluster_summary.json", summary.dump(2) + "\n");
    log_line(ctx, "k-means: k=" + std::to_string(c.k) + " iterations=" + std::to_string(c.iterations) +
                      (c.converged ? " converged" : " (max_iters reached)"));
}

ResultTable run_sweep(const ExperimentConfig &config, const std::optional<fs::path> &map_override, unsigned threads,
                      const std::optional<fs::path> &cluster_dir)
{
    const auto Ms = sorted(config.sweep_M);
    const auto ks = sorted(config.sweep_k);
    const auto qs = sorted(config.q_percent);
    const auto modes = sorted_modes(config.modes);
    const auto seeds = sorted(config.sweep_seeds);
    const std::size_t max_M = Ms.back();

    const bool from_file = map_override || config.scenario == Scenario::file;
    std::optional<ChannelMap> shared;
    if (from_file || !config.sweep_resynthesize)
        shared = from_file ? resolve_map(config, map_override) : build_map(config, config.nlos_seed, max_M);
    if (shared && shared->antennas() < max_M)
        throw Error(ErrorKind::config_error, "sweep.M asks for " + std::to_string(max_M) + " antennas but the map has " +
                                                 std::to_string(shared->antennas()));

    // Slot layout follows the output order (M, k, q, mode, seed).
    const std::size_t nq = qs.size(), nm = modes.size(), ns = seeds.size(), nk = ks.size();
    auto slot = [&](std::size_t mi, std::size_t ki, std::size_t qi, std::size_t di, std::size_t si) {
        return (((mi * nk + ki) * nq + qi) * nm + di) * ns + si;
    };
    std::vector<std::optional<RateReport>> reports(Ms.size() * nk * nq * nm * ns);

    // One unit per (seed, M); units run in any order, results land in slots.
    const std::size_t units = ns * Ms.size();
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::optional<std::pair<std::size_t, Error>> first_error;
    std::exception_ptr foreign;

    auto worker = [&] {
        while (!failed.load())
        {
            const std::size_t u = next.fetch_add(1);
            if (u >= units)
                return;
            const std::size_t si = u / Ms.size(), mi = u % Ms.size();
            try
            {
                const ChannelMap full = shared ? *shared : build_map(config, seeds[si], max_M);
                const ChannelMap map = full.antenna_prefix(Ms[mi]);
                for (std::size_t ki = 0; ki < nk && !failed.load(); ++ki)
                {
                    const Clustering c = kmeans(map, kmeans_options(config, ks[ki], seeds[si]));
                    const auto rates = cluster_sir(map, c, mr_precoder(c), config.sir);
                    for (std::size_t qi = 0; qi < nq; ++qi)
                        for (std::size_t di = 0; di < nm; ++di)
                            reports[slot(mi, ki, qi, di, si)] = rate_report(map, c, rates, qs[qi] / 100.0, modes[di]);
                    if (cluster_dir)
                        write_table(clustering_table(map, c),
                                    *cluster_dir / ("M" + std::to_string(Ms[mi]) + "_k" + std::to_string(ks[ki]) +
                                                    "_seed" + std::to_string(seeds[si]) + ".csv"));
                }
            }
            catch (const Error &e)
            {
                std::lock_guard lock(error_mutex);
                if (!first_error || u < first_error->first)
                    first_error.emplace(u, e);
                failed = true;
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                foreign = std::current_exception();
                failed = true;
            }
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(units)));
    if (n_threads == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    ResultTable table = make_sweep_table();
    std::size_t done = 0;
    for (std::size_t mi = 0; mi < Ms.size(); ++mi)
        for (std::size_t ki = 0; ki < nk; ++ki)
            for (std::size_t qi = 0; qi < nq; ++qi)
                for (std::size_t di = 0; di < nm; ++di)
                    for (std::size_t si = 0; si < ns; ++si)
                        if (const auto &r = reports[slot(mi, ki, qi, di, si)])
                        {
                            append_report(table, *r, qs[qi], seeds[si]);
                            ++done;
                        }
    if (foreign)
        std::rethrow_exception(foreign);
    if (first_error)
    {
        const Error &e = first_error->second;
        throw SweepAborted(e, std::move(table), done, reports.size());
    }
    return table;
}

void cmd_sweep(const ExperimentConfig &config, const CommandContext &ctx)
{
    prepare_out(ctx.out_dir);
    archive_config(config, ctx.out_dir);
    std::optional<fs::path> cluster_dir;
    if (config.sweep_write_clusters)
    {
        cluster_dir = ctx.out_dir / "clusters";
        prepare_out(*cluster_dir);
    }
    try
    {
        const ResultTable table = run_sweep(config, ctx.map_override, ctx.threads, cluster_dir);
        write_table(table, ctx.out_dir / "sweep.csv");
        log_line(ctx, "sweep: " + std::to_string(table.row_count()) + " rows");
    }
    catch (const SweepAborted &a)
    {
        write_table(a.completed(), ctx.out_dir / "sweep.partial.csv");
        log_line(ctx, "sweep aborted after " + std::to_string(a.done()) + " of " + std::to_string(a.total()) +
                          " cells; completed rows in sweep.partial.csv");
        throw;
    }
}

void cmd_energymap(const ExperimentConfig &config, const CommandContext &ctx)
{
    const ChannelMap map = resolve_map(config, ctx.map_override);
    const GridSpec &g = map.grid();
    const Cell target = config.target_cell ? *config.target_cell : g.nearest_cell(*config.target_m);
    const std::vector<double> e = energy_map(map, target);
    const std::size_t best = static_cast<std::size_t>(std::max_element(e.begin(), e.end()) - e.begin());
    const double peak = e[best];

    ResultTable table({"cell_i", "cell_j", "x_m", "y_m", "energy", "energy_rel"});
    for (std::size_t n = 0; n < e.size(); ++n)
    {
        const Cell c = g.cell(n);
        const Point2 p = g.position(c);
        table.add_row({static_cast<std::int64_t>(c.i), static_cast<std::int64_t>(c.j), p.x, p.y, e[n],
                       peak > 0.0 ? e[n] / peak : 0.0});
    }
    prepare_out(ctx.out_dir);
    archive_config(config, ctx.out_dir);
    write_table(table, ctx.out_dir / "energymap.csv");

    const Cell at = g.cell(best);
    const json summary = {{"target_cell", {target.i, target.j}},
                          {"target_position_m", {g.position(target).x, g.position(target).y}},
                          {"argmax_cell", {at.i, at.j}},
                          {"argmax_position_m", {g.position(at).x, g.position(at).y}},
                          {"offset_cells", {static_cast<long>(at.i) - static_cast<long>(target.i),
                                            static_cast<long>(at.j) - static_cast<long>(target.j)}},
                          {"peak_energy", peak},
                          {"target_energy", e[g.index(target)]}};
    write_text(ctx.out_dir / "energymap_summary.json", summary.dump(2) + "\n");
    log_line(ctx, "energy map: target (" + std::to_string(target.i) + ", " + std::to_string(target.j) + "), argmax (" +
                      std::to_string(at.i) + ", " + std::to_string(at.j) + ")");
}

void cmd_validate(const ExperimentConfig &config, const CommandContext &ctx)
{
    config.validate();
    std::optional<fs::path> file = ctx.map_override;
    if (!file && config.scenario == Scenario::file)
        file = config.map_file;
    if (file)
    {
        const ChannelMap map = read_map(*file);
        const auto max_M = *std::max_element(config.sweep_M.begin(), config.sweep_M.end());
        if (max_M > map.antennas())
            throw Error(ErrorKind::config_error, "sweep.M asks for " + std::to_string(max_M) +
                                                     " antennas but the map has " + std::to_string(map.antennas()));
        log_line(ctx, "map ok: " + file->string() + " (" + std::to_string(map.positions()) + " x " +
                          std::to_string(map.antennas()) + ")");
    }
    log_line(ctx, std::string("config ok: scenario ") + to_string(config.scenario));
}

} // namespace areamimo::app
