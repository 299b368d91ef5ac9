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

#include "areamimo/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "areamimo/channel_io.hpp"
#include "areamimo/channel_synth.hpp"
#include "areamimo/error.hpp"

namespace areamimo::app
{

using json = nlohmann::json;

namespace
{

[[noreturn]] void config_error(const std::string &msg)
{
    throw Error(ErrorKind::config_error, msg);
}

/// Object reader that records which keys were consumed.
class Obj
{
public:
    Obj(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            config_error(where() + " must be a JSON object");
    }

    bool has(const char *key)
    {
        used_.insert(key);
        return j_.contains(key) && !j_[key].is_null();
    }

    const json &raw(const char *key)
    {
        used_.insert(key);
        return j_[key];
    }

    double number(const char *key, double fallback)
    {
        if (!has(key))
            return fallback;
        const json &v = j_[key];
        if (!v.is_number() || !std::isfinite(v.get<double>()))
            config_error(where(key) + " must be a finite number");
        return v.get<double>();
    }

    std::uint64_t unsigned_int(const char *key, std::uint64_t fallback)
    {
        if (!has(key))
            return fallback;
        return as_unsigned(j_[key], where(key));
    }

    bool flag(const char *key, bool fallback)
    {
        if (!has(key))
            return fallback;
        if (!j_[key].is_boolean())
            config_error(where(key) + " must be true or false");
        return j_[key].get<bool>();
    }

    std::string text(const char *key, const std::string &fallback)
    {
        if (!has(key))
            return fallback;
        if (!j_[key].is_string())
            config_error(where(key) + " must be a string");
        return j_[key].get<std::string>();
    }

    std::optional<Obj> child(const char *key)
    {
        if (!has(key))
            return std::nullopt;
        return Obj(j_[key], path_.empty() ? std::string(key) : path_ + "." + key);
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key()))
                config_error("unknown key " + where(it.key().c_str()));
    }

    std::string where(const char *key = nullptr) const
    {
        if (!key)
            return path_.empty() ? "config" : "'" + path_ + "'";
        return "'" + (path_.empty() ? std::string(key) : path_ + "." + key) + "'";
    }

    static std::uint64_t as_unsigned(const json &v, const std::string &where)
    {
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
            config_error(where + " must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

private:
    const json &j_;
    std::string path_;
    std::set<std::string> used_;
};

template <class T, class F> std::vector<T> list_of(Obj &o, const char *key, std::vector<T> fallback, F convert)
{
    if (!o.has(key))
        return fallback;
    const json &v = o.raw(key);
    if (!v.is_array() || v.empty())
        config_error(o.where(key) + " must be a non-empty array");
    std::vector<T> out;
    for (std::size_t n = 0; n < v.size(); ++n)
        out.push_back(convert(v[n], o.where(key) + "[" + std::to_string(n) + "]"));
    return out;
}

std::uint64_t to_u64(const json &v, const std::string &where)
{
    return Obj::as_unsigned(v, where);
}

std::size_t to_size(const json &v, const std::string &where)
{
    return static_cast<std::size_t>(Obj::as_unsigned(v, where));
}

double to_double(const json &v, const std::string &where)
{
    if (!v.is_number() || !std::isfinite(v.get<double>()))
        config_error(where + " must be a finite number");
    return v.get<double>();
}

Point2 to_point(const json &v, const std::string &where)
{
    if (!v.is_array() || v.size() != 2)
        config_error(where + " must be a [x, y] pair");
    return {to_double(v[0], where + "[0]"), to_double(v[1], where + "[1]")};
}

Scenario scenario_from_string(const std::string &s)
{
    for (auto v : {Scenario::los, Scenario::nlos, Scenario::mixed, Scenario::file})
        if (s == to_string(v))
            return v;
    config_error("unknown scenario '" + s + "' (expected los, nlos, mixed or file)");
}

template <class T> bool has_duplicates(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

/// Library validation errors inside a config are config errors.
template <class F> void as_config(F &&f)
{
    try
    {
        f();
    }
    catch (const Error &e)
    {
        if (e.category() == ErrorCategory::config)
            throw;
        config_error(e.what());
    }
}

NlosParams nlos_params(const ExperimentConfig &c, std::uint64_t seed)
{
    NlosParams p;
    p.sx = c.nlos_sx;
    p.sy = c.nlos_sy;
    p.L = c.nlos_L;
    p.alpha = c.alpha;
    p.sigma2 = c.sigma2;
    p.seed = seed;
    return p;
}

ArrayGeometry los_array(const ExperimentConfig &c, const GridSpec &grid, const CarrierSpec &carrier,
                        std::size_t antennas)
{
    if (c.array_positions)
        return ArrayGeometry(*c.array_positions);
    if (!c.array_spacing_m)
        return default_los_array(grid, carrier, antennas, c.array_standoff_m);
    const double xc = grid.x0 + 0.5 * static_cast<double>(grid.nx - 1) * grid.delta;
    return ArrayGeometry::uniform_linear(antennas, *c.array_spacing_m, {xc, grid.y0 - c.array_standoff_m});
}

} // namespace

const char *to_string(Scenario s) noexcept
{
    switch (s)
    {
    case Scenario::los:
        return "los";
    case Scenario::nlos:
        return "nlos";
    case Scenario::mixed:
        return "mixed";
    case Scenario::file:
        return "file";
    }
    return "?";
}

std::vector<std::size_t> default_k_sweep()
{
    std::vector<std::size_t> k;
    for (std::size_t v = 10; v <= 120; v += 5)
        k.push_back(v);
    return k;
}

void ExperimentConfig::validate() const
{
    as_config([&] { CarrierSpec{fc_hz}; });
    if (antennas < 1)
        config_error("antennas must be >= 1");
    if (scenario == Scenario::file)
    {
        if (!map_file)
            config_error("scenario 'file' needs map_file");
        const auto paths = map_file_paths(*map_file);
        if (!std::filesystem::exists(paths.meta) || !std::filesystem::exists(paths.payload))
            config_error("map_file '" + map_file->string() + "' does not exist");
    }
    if (scenario == Scenario::los)
        as_config([&] { grid.validate(); });
    if (array_spacing_m && !(*array_spacing_m > 0.0))
        config_error("array.spacing_m must be positive");
    if (!(array_standoff_m > 0.0))
        config_error("array.standoff_m must be positive");
    if (array_positions)
    {
        as_config([&] { ArrayGeometry{*array_positions}; });
        if (array_positions->size() != antennas)
            config_error("antennas must equal the number of array.positions");
    }
    as_config([&] { nlos_params(*this, 0).validate(); });
    as_config([&] { rank_policy.validate(); });
    if (detect_num_seeds < 1)
        config_error("detection.num_seeds must be >= 1");
    if (!(eta_threshold >= 0.0 && eta_threshold <= 1.0))
        config_error("detection.eta_threshold must lie in [0, 1]");
    if (cluster_k < 1)
        config_error("clustering.k must be >= 1");
    if (cluster_max_iters < 1)
        config_error("clustering.max_iters must be >= 1");
    if (!(sir.cap > 0.0) || !(sir.underflow_ratio >= 0.0) || !(sir.noise_power >= 0.0))
        config_error("sir: cap must be positive, underflow_ratio and noise_power non-negative");
    if (q_percent.empty() || has_duplicates(q_percent))
        config_error("evaluation.q_percent must be a non-empty list of distinct values");
    for (double q : q_percent)
        if (!(q > 0.0 && q <= 100.0))
            config_error("evaluation.q_percent values must lie in (0, 100]");
    if (modes.empty() || has_duplicates(modes))
        config_error("evaluation.modes must be a non-empty list of distinct modes");
    if (sweep_k.empty() || has_duplicates(sweep_k))
        config_error("sweep.k must be a non-empty list of distinct values");
    for (auto k : sweep_k)
        if (k < 2)
            config_error("sweep.k values must be >= 2 (SIR needs two clusters)");
    if (has_duplicates(sweep_M))
        config_error("sweep.M values must be distinct");
    for (auto m : sweep_M)
        if (m < 1)
            config_error("sweep.M values must be >= 1");
    if (sweep_seeds.empty() || has_duplicates(sweep_seeds))
        config_error("sweep.seeds must be a non-empty list of distinct seeds");
    if (target_m && target_cell)
        config_error("energymap: give either target_m or target_cell, not both");
    if (!target_m && !target_cell)
        config_error("energymap needs target_m or target_cell");
}

void ExperimentConfig::override_seed(std::uint64_t seed)
{
    nlos_seed = seed;
    detect_seed = seed;
    cluster_seed = seed;
    sweep_seeds = {seed};
}

namespace
{

ExperimentConfig parse_unvalidated(const std::string &text)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    Obj top(root, "");
    ExperimentConfig c;
    c.scenario = scenario_from_string(top.text("scenario", "nlos"));

    // Scenario-dependent defaults.
    const bool small_array = c.scenario == Scenario::los || c.scenario == Scenario::mixed;
    c.antennas = small_array ? 16 : 64;
    c.array_standoff_m = c.scenario == Scenario::mixed ? 1.0 : 0.1;
    c.alpha_los_matched = c.scenario == Scenario::mixed;

    if (top.has("map_file"))
        c.map_file = top.text("map_file", "");
    c.output_dir = top.text("output_dir", c.output_dir.string());
    c.antennas = static_cast<std::size_t>(top.unsigned_int("antennas", c.antennas));

    if (auto o = top.child("carrier"))
    {
        c.fc_hz = o->number("fc_hz", c.fc_hz);
        o->finish();
    }
    if (auto o = top.child("grid"))
    {
        c.grid.nx = static_cast<std::size_t>(o->unsigned_int("nx", c.grid.nx));
        c.grid.ny = static_cast<std::size_t>(o->unsigned_int("ny", c.grid.ny));
        c.grid.delta = o->number("delta_m", c.grid.delta);
        c.grid.x0 = o->number("x0", c.grid.x0);
        c.grid.y0 = o->number("y0", c.grid.y0);
        o->finish();
    }
    if (auto o = top.child("array"))
    {
        if (o->has("spacing_m"))
            c.array_spacing_m = o->number("spacing_m", 0.0);
        c.array_standoff_m = o->number("standoff_m", c.array_standoff_m);
        if (o->has("positions"))
        {
            c.array_positions = list_of<Point2>(*o, "positions", {}, to_point);
            if (!top.has("antennas"))
                c.antennas = c.array_positions->size();
        }
        o->finish();
    }
    if (auto o = top.child("nlos"))
    {
        c.nlos_sx = static_cast<std::size_t>(o->unsigned_int("sx", c.nlos_sx));
        c.nlos_sy = static_cast<std::size_t>(o->unsigned_int("sy", c.nlos_sy));
        c.nlos_L = static_cast<std::size_t>(o->unsigned_int("L", c.nlos_L));
        if (o->has("alpha"))
        {
            const json &a = o->raw("alpha");
            if (a.is_string())
            {
                if (a.get<std::string>() != "los-matched")
                    config_error("nlos.alpha must be a number or \"los-matched\"");
                c.alpha_los_matched = true;
            }
            else
            {
                c.alpha = o->number("alpha", c.alpha);
                c.alpha_los_matched = false;
            }
        }
        c.sigma2 = o->number("sigma2", c.sigma2);
        c.nlos_seed = o->unsigned_int("seed", c.nlos_seed);
        o->finish();
    }
    if (auto o = top.child("mixed"))
    {
        c.mixed_i_above = static_cast<std::size_t>(o->unsigned_int("nlos_if_i_above", c.mixed_i_above));
        c.mixed_j_above = static_cast<std::size_t>(o->unsigned_int("nlos_if_j_above", c.mixed_j_above));
        o->finish();
    }
    if (auto o = top.child("detection"))
    {
        c.rank_policy.power_fraction = o->number("power_fraction", c.rank_policy.power_fraction);
        c.rank_policy.rank_limit = static_cast<std::size_t>(o->unsigned_int("rank_limit", c.rank_policy.rank_limit));
        c.detect_num_seeds = static_cast<std::size_t>(o->unsigned_int("num_seeds", c.detect_num_seeds));
        c.eta_threshold = o->number("eta_threshold", c.eta_threshold);
        c.detect_seed = o->unsigned_int("seed", c.detect_seed);
        o->finish();
    }
    if (auto o = top.child("clustering"))
    {
        c.cluster_k = static_cast<std::size_t>(o->unsigned_int("k", c.cluster_k));
        as_config([&] { c.cluster_init = kmeans_init_from_string(o->text("init", to_string(c.cluster_init))); });
        c.cluster_max_iters = static_cast<std::size_t>(o->unsigned_int("max_iters", c.cluster_max_iters));
        c.cluster_seed = o->unsigned_int("seed", c.cluster_seed);
        o->finish();
    }
    if (auto o = top.child("sir"))
    {
        c.sir.cap = o->number("cap", c.sir.cap);
        c.sir.underflow_ratio = o->number("underflow_ratio", c.sir.underflow_ratio);
        c.sir.noise_power = o->number("noise_power", c.sir.noise_power);
        o->finish();
    }
    if (auto o = top.child("evaluation"))
    {
        c.q_percent = list_of<double>(*o, "q_percent", c.q_percent, to_double);
        c.modes = list_of<PercentileMode>(*o, "modes", c.modes, [](const json &v, const std::string &w) {
            if (!v.is_string())
                config_error(w + " must be a string");
            PercentileMode m{};
            as_config([&] { m = percentile_mode_from_string(v.get<std::string>()); });
            return m;
        });
        o->finish();
    }
    if (auto o = top.child("sweep"))
    {
        c.sweep_k = list_of<std::size_t>(*o, "k", c.sweep_k, to_size);
        c.sweep_M = list_of<std::size_t>(*o, "M", c.sweep_M, to_size);
        c.sweep_seeds = list_of<std::uint64_t>(*o, "seeds", c.sweep_seeds, to_u64);
        c.sweep_resynthesize = o->flag("resynthesize", c.sweep_resynthesize);
        c.sweep_write_clusters = o->flag("write_clusters", c.sweep_write_clusters);
        o->finish();
    }
    if (c.sweep_M.empty())
        c.sweep_M = {c.antennas};
    if (auto o = top.child("energymap"))
    {
        if (o->has("target_cell"))
        {
            const auto v = list_of<std::size_t>(*o, "target_cell", {}, to_size);
            if (v.size() != 2)
                config_error("energymap.target_cell must be an [i, j] pair");
            c.target_cell = Cell{v[0], v[1]};
            c.target_m.reset();
        }
        if (o->has("target_m"))
            c.target_m = to_point(o->raw("target_m"), "energymap.target_m");
        o->finish();
    }
    top.finish();
    return c;
}

} // namespace

ExperimentConfig parse_config(const std::string &text)
{
    ExperimentConfig c = parse_unvalidated(text);
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        config_error("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    ExperimentConfig c = parse_unvalidated(ss.str());
    // Relative map paths resolve against the config's directory.
    if (c.map_file && c.map_file->is_relative())
        c.map_file = path.parent_path() / *c.map_file;
    c.validate();
    return c;
}

std::string to_json(const ExperimentConfig &c)
{
    json j;
    j["scenario"] = to_string(c.scenario);
    j["map_file"] = c.map_file ? json(c.map_file->string()) : json(nullptr);
    j["output_dir"] = c.output_dir.string();
    j["antennas"] = c.antennas;
    j["carrier"] = {{"fc_hz", c.fc_hz}};
    j["grid"] = {{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"delta_m", c.grid.delta}, {"x0", c.grid.x0}, {"y0", c.grid.y0}};
    json arr = {{"spacing_m", c.array_spacing_m ? json(*c.array_spacing_m) : json(nullptr)},
                {"standoff_m", c.array_standoff_m}};
    if (c.array_positions)
    {
        json pos = json::array();
        for (const auto &p : *c.array_positions)
            pos.push_back({p.x, p.y});
        arr["positions"] = pos;
    }
    else
        arr["positions"] = nullptr;
    j["array"] = arr;
    j["nlos"] = {{"sx", c.nlos_sx},
                 {"sy", c.nlos_sy},
                 {"L", c.nlos_L},
                 {"alpha", c.alpha_los_matched ? json("los-matched") : json(c.alpha)},
                 {"sigma2", c.sigma2},
                 {"seed", c.nlos_seed}};
    j["mixed"] = {{"nlos_if_i_above", c.mixed_i_above}, {"nlos_if_j_above", c.mixed_j_above}};
    j["detection"] = {{"power_fraction", c.rank_policy.power_fraction},
                      {"rank_limit", c.rank_policy.rank_limit},
                      {"num_seeds", c.detect_num_seeds},
                      {"eta_threshold", c.eta_threshold},
                      {"seed", c.detect_seed}};
    j["clustering"] = {{"k", c.cluster_k},
                       {"init", to_string(c.cluster_init)},
                       {"max_iters", c.cluster_max_iters},
                       {"seed", c.cluster_seed}};
    j["sir"] = {{"cap", c.sir.cap}, {"underflow_ratio", c.sir.underflow_ratio}, {"noise_power", c.sir.noise_power}};
    json modes = json::array();
    for (auto m : c.modes)
        modes.push_back(to_string(m));
    j["evaluation"] = {{"q_percent", c.q_percent}, {"modes", modes}};
    j["sweep"] = {{"k", c.sweep_k},
                  {"M", c.sweep_M},
                  {"seeds", c.sweep_seeds},
                  {"resynthesize", c.sweep_resynthesize},
                  {"write_clusters", c.sweep_write_clusters}};
    json em = json::object();
    if (c.target_cell)
        em["target_cell"] = {c.target_cell->i, c.target_cell->j};
    if (c.target_m)
        em["target_m"] = {c.target_m->x, c.target_m->y};
    j["energymap"] = em;
    return j.dump(2) + "\n";
}

ChannelMap build_map(const ExperimentConfig &c, std::uint64_t seed, std::size_t antennas)
{
    const CarrierSpec carrier(c.fc_hz);
    switch (c.scenario)
    {
    case Scenario::los:
        return synth_los(c.grid, carrier, los_array(c, c.grid, carrier, antennas));
    case Scenario::nlos:
    {
        NlosParams p = nlos_params(c, seed);
        if (c.alpha_los_matched)
        {
            const GridSpec g = nlos_grid(p, carrier);
            p.alpha = los_matched_alpha(g, carrier, los_array(c, g, carrier, antennas));
        }
        return synth_nlos(p, antennas, carrier);
    }
    case Scenario::mixed:
    {
        NlosParams p = nlos_params(c, seed);
        const GridSpec g = nlos_grid(p, carrier);
        const ArrayGeometry array = los_array(c, g, carrier, antennas);
        if (c.alpha_los_matched)
            p.alpha = los_matched_alpha(g, carrier, array);
        const ChannelMap nlos = synth_nlos(p, antennas, carrier);
        const ChannelMap los = synth_los(g, carrier, array);
        return compose_mixed(los, nlos, mixed_predicate(c));
    }
    case Scenario::file:
        break;
    }
    config_error("scenario 'file' has no synthesizer; use map_file");
}

ChannelMap resolve_map(const ExperimentConfig &c, const std::optional<std::filesystem::path> &map_override)
{
    if (map_override)
        return read_map(*map_override);
    if (c.scenario == Scenario::file)
        return read_map(*c.map_file);
    return build_map(c, c.nlos_seed, c.antennas);
}

RegionPredicate mixed_predicate(const ExperimentConfig &c)
{
    return nlos_rectangle(c.mixed_i_above, c.mixed_j_above);
}

} // namespace areamimo::app
