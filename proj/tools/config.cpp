// Copyright 2026 The qdos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qdos/error.hpp"
#include "qdos/hash.hpp"
#include "qdos/model_io.hpp"
#include "qdos/thermo.hpp"

namespace qdos::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Resolution target for the automatic series length, in units of |J|.
constexpr double kDefaultResolution = 0.02;
// Default tau0 in units of 1/|J|.
constexpr double kDefaultTau = 0.05;
// Extra bandwidth added to the energy bound before applying the Nyquist
// rule, in units of |J|. Keeps the Hann main lobe of an eigenvalue sitting
// right at the bound (half-width two resolution cells) inside one period of
// the transform instead of wrapping onto the opposite edge.
constexpr double kGuardBand = 4.0 * kDefaultResolution;

const std::set<std::string> kKnownKeys{
    "preset",  "hamiltonian", "hamiltonian_file", "tau",         "time_samples",
    "delta_t", "samples",     "ensemble",         "seed",        "method",
    "window",  "temperatures", "steps",           "norm_every",  "bench_sizes",
    "bench_repeats", "output", "fixtures",        "threads"};

int preset_rows(const std::string &name) {
    if (name == "tri6") return 3;
    if (name == "tri10") return 4;
    if (name == "tri15") return 5;
    if (name == "tri21") return 6;
    throw ConfigError("unknown preset '" + name + "' (expected tri6, tri10, tri15 or tri21)");
}

void apply_preset(RunConfig &c, const std::string &name) {
    c.preset = name;
    c.hamiltonian = build_triangular({preset_rows(name), -1.0});
    c.samples = 20;
    c.ensemble = Ensemble::RandomSign;
    c.method = SeriesMethod::HalfTime;
}

Ensemble parse_ensemble(const std::string &s) {
    if (s == "random_sign") return Ensemble::RandomSign;
    if (s == "gaussian_complex") return Ensemble::GaussianComplex;
    if (s == "basis") return Ensemble::Basis;
    throw ConfigError("unknown ensemble '" + s + "'");
}

std::string ensemble_name(Ensemble e) {
    switch (e) {
    case Ensemble::RandomSign:
        return "random_sign";
    case Ensemble::GaussianComplex:
        return "gaussian_complex";
    case Ensemble::Basis:
        return "basis";
    }
    return "unknown";
}

std::vector<double> parse_temperatures(const json &j) {
    if (j.is_array()) {
        auto t = j.get<std::vector<double>>();
        if (t.empty()) throw ConfigError("temperatures list is empty");
        for (double v : t) {
            if (!(v > 0.0)) throw ConfigError("temperatures must be positive");
        }
        return t;
    }
    if (j.is_object()) {
        const double lo = j.value("min", 0.05);
        const double hi = j.value("max", 5.0);
        const int n = j.value("count", 60);
        if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
            throw ConfigError("temperatures need 0 < min <= max and count >= 1");
        }
        return log_spaced(lo, hi, n);
    }
    throw ConfigError("temperatures must be a list or {min, max, count}");
}

void apply_json(RunConfig &c, const json &j, const std::filesystem::path &base_dir) {
    for (const auto &[key, _] : j.items()) {
        if (!kKnownKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    if (j.contains("hamiltonian") && j.contains("hamiltonian_file")) {
        throw ConfigError("give either 'hamiltonian' or 'hamiltonian_file', not both");
    }
    try {
        if (j.contains("hamiltonian")) c.hamiltonian = parse_hamiltonian(j.at("hamiltonian").dump());
        if (j.contains("hamiltonian_file")) {
            std::filesystem::path p = j.at("hamiltonian_file").get<std::string>();
            if (p.is_relative()) p = base_dir / p;
            if (!std::filesystem::exists(p)) {
                throw ConfigError("hamiltonian file not found: " + p.string());
            }
            c.hamiltonian = load_hamiltonian(p);
        }
    } catch (const FormatError &e) {
        throw ConfigError(e.what());
    }
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    if (j.contains("time_samples")) {
        c.time_samples = j.at("time_samples").get<int>();
        if (c.time_samples < 2) throw ConfigError("time_samples must be >= 2");
    }
    if (j.contains("delta_t")) {
        const auto &d = j.at("delta_t");
        if (d.is_string()) {
            if (d.get<std::string>() != "nyquist") {
                throw ConfigError("delta_t must be a number or \"nyquist\"");
            }
            c.delta_t.reset();
        } else {
            c.delta_t = d.get<double>();
        }
    }
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("ensemble")) c.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    try {
        if (j.contains("method")) c.method = parse_series_method(j.at("method").get<std::string>());
        if (j.contains("window")) c.window = parse_window_kind(j.at("window").get<std::string>());
    } catch (const FormatError &e) {
        throw ConfigError(e.what());
    }
    if (j.contains("temperatures")) c.temperatures = parse_temperatures(j.at("temperatures"));
    if (j.contains("steps")) c.steps = j.at("steps").get<std::int64_t>();
    if (j.contains("norm_every")) c.norm_every = j.at("norm_every").get<std::int64_t>();
    if (j.contains("bench_sizes")) c.bench_sizes = j.at("bench_sizes").get<std::vector<int>>();
    if (j.contains("bench_repeats")) c.bench_repeats = j.at("bench_repeats").get<int>();
    if (j.contains("output")) c.output_dir = j.at("output").get<std::string>();
    if (j.contains("fixtures")) {
        std::filesystem::path p = j.at("fixtures").get<std::string>();
        c.fixtures_path = p.is_relative() ? base_dir / p : p;
    }
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
}

void validate(const RunConfig &c) {
    if (c.tau && !(*c.tau > 0.0)) throw ConfigError("tau must be positive");
    if (c.delta_t && !(*c.delta_t > 0.0)) throw ConfigError("delta_t must be positive");
    if (c.samples < 1) throw ConfigError("samples must be >= 1");
    if (c.steps < 0) throw ConfigError("steps must be >= 0");
    if (c.norm_every < 1) throw ConfigError("norm_every must be >= 1");
    if (c.threads < 0) throw ConfigError("threads must be >= 0");
    if (c.bench_repeats < 1) throw ConfigError("bench_repeats must be >= 1");
    for (int l : c.bench_sizes) {
        if (l < 2 || l > kMaxSpins) throw ConfigError("bench_sizes entries must lie in [2, 30]");
    }
    if (c.method == SeriesMethod::HalfTime && c.ensemble == Ensemble::GaussianComplex) {
        throw ConfigError("half_time method requires real initial states; gaussian_complex states are complex");
    }
}

} // namespace

const std::vector<std::string> &preset_names() {
    static const std::vector<std::string> names{"tri6", "tri10", "tri15", "tri21"};
    return names;
}

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path &base_dir,
                           const Overrides &overrides) {
    RunConfig c;
    json j = json::object();
    try {
        if (!json_text.empty()) j = json::parse(json_text);
        if (!j.is_object()) throw ConfigError("config must be a JSON object");

        std::optional<std::string> preset = overrides.preset;
        if (!preset && j.contains("preset")) preset = j.at("preset").get<std::string>();
        if (preset) apply_preset(c, *preset);
        apply_json(c, j, base_dir);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (overrides.out) c.output_dir = *overrides.out;
    if (overrides.seed) c.seed = *overrides.seed;
    if (overrides.samples) c.samples = *overrides.samples;
    if (overrides.threads) c.threads = *overrides.threads;
    validate(c);
    return c;
}

RunConfig load_run_config(const std::optional<std::filesystem::path> &path,
                          const Overrides &overrides) {
    if (!path) return parse_run_config({}, std::filesystem::current_path(), overrides);
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file " + path->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), path->parent_path(), overrides);
}

std::string canonical_json(const RunConfig &c) {
    ordered_json j;
    j["hamiltonian"] = c.hamiltonian ? json::parse(to_json(*c.hamiltonian)) : json();
    j["tau"] = c.tau ? json(*c.tau) : json("auto");
    j["time_samples"] = c.time_samples;
    j["delta_t"] = c.delta_t ? json(*c.delta_t) : json("nyquist");
    j["samples"] = c.samples;
    j["ensemble"] = ensemble_name(c.ensemble);
    j["seed"] = c.seed;
    j["method"] = std::string(to_string(c.method));
    j["window"] = std::string(to_string(c.window));
    j["temperatures"] = c.temperatures;
    j["steps"] = c.steps;
    j["norm_every"] = c.norm_every;
    return j.dump();
}

std::string config_hash(const RunConfig &c) { return hex64(fnv1a64(canonical_json(c))); }

const SpinHamiltonian &require_hamiltonian(const RunConfig &c) {
    if (!c.hamiltonian) {
        throw ConfigError("no Hamiltonian: set 'hamiltonian', 'hamiltonian_file' or a preset");
    }
    return *c.hamiltonian;
}

ResolvedRun resolve(const RunConfig &c) {
    const auto &h = require_hamiltonian(c);
    const double scale = h.coupling_scale() > 0.0 ? h.coupling_scale() : 1.0;
    ResolvedRun r;
    r.energy_bound = energy_bound(h);
    const double tau0 = c.tau ? *c.tau : kDefaultTau / scale;
    const int n_fixed = c.time_samples;
    try {
        if (c.delta_t) {
            double tau = tau0;
            if (!c.tau) {
                // Largest tau <= tau0 that divides delta_t (evenly for half_time).
                const std::int64_t mult = c.method == SeriesMethod::HalfTime ? 2 : 1;
                auto steps = static_cast<std::int64_t>(std::ceil(*c.delta_t / tau0 - 1e-9));
                steps = std::max<std::int64_t>(mult, (steps + mult - 1) / mult * mult);
                tau = *c.delta_t / static_cast<double>(steps);
            }
            r.grid = make_time_grid(tau, *c.delta_t, std::max(n_fixed, 2), c.method);
        } else {
            if (!(r.energy_bound > 0.0)) {
                throw ConfigError("the Hamiltonian has no terms; set delta_t explicitly");
            }
            r.grid = nyquist_time_grid(r.energy_bound + kGuardBand * scale, tau0,
                                       std::max(n_fixed, 2), c.method);
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (n_fixed == 0) {
        const double n = std::ceil(std::numbers::pi / (r.grid.delta_t() * kDefaultResolution * scale));
        r.grid.num_points = std::max(2, static_cast<int>(n));
    }
    const double resolution = std::numbers::pi / (r.grid.delta_t() * r.grid.num_points);
    const double margin = std::max(kGuardBand * scale, 2.0 * resolution);
    const auto range = energy_range(h);
    r.dos_lo = range.lo - margin;
    r.dos_hi = range.hi + margin;
    r.temperatures = c.temperatures.empty() ? default_temperatures(scale) : c.temperatures;
    return r;
}

SamplingOptions sampling_options(const RunConfig &c) {
    SamplingOptions o;
    o.samples = c.samples;
    o.seed = c.seed;
    o.method = c.method;
    o.basis_states = c.ensemble == Ensemble::Basis;
    o.kind = c.ensemble == Ensemble::GaussianComplex ? RandomStateKind::GaussianComplex
                                                     : RandomStateKind::RandomSign;
    return o;
}

} // namespace qdos::cli
