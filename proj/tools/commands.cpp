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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "qdos/error.hpp"
#include "qdos/evolve.hpp"
#include "qdos/fixtures.hpp"
#include "qdos/oracle.hpp"
#include "qdos/spectral.hpp"
#include "qdos/thermo.hpp"
#include "qdos/version.hpp"

namespace qdos::cli {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kNormDriftLimit = 1e-8;

std::string header(const RunConfig &c, std::string_view command) {
    return "qdos " + std::string(kVersion) + " config_hash=" + config_hash(c) +
           " command=" + std::string(command);
}

std::ofstream open_output(const RunConfig &c, const std::string &name) {
    std::filesystem::create_directories(c.output_dir);
    const auto path = c.output_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct SampledRun {
    ResolvedRun resolved;
    CorrelationSeries series;
    OpCounts counts;
};

SampledRun run_sampling(const RunConfig &c, std::ostream &log) {
    SampledRun r;
    r.resolved = resolve(c);
    const auto &g = r.resolved.grid;
    const TrotterPlan plan(require_hamiltonian(c), g.tau);
    log << "L=" << c.hamiltonian->num_spins() << " bonds=" << c.hamiltonian->num_bonds()
        << " E_max=" << r.resolved.energy_bound << " tau=" << g.tau << " dt=" << g.delta_t()
        << " N=" << g.num_points << " method=" << to_string(c.method) << '\n';
    const auto start = Clock::now();
    r.series = sample_trace(plan, g, sampling_options(c), &r.counts);
    log << "sampled " << r.series.sample_count() << " series in " << seconds_since(start)
        << " s\n";
    return r;
}

void write_sampling_outputs(const RunConfig &c, const SampledRun &r, const DosEstimate &dos,
                            std::string_view command) {
    const auto head = header(c, command);
    {
        auto out = open_output(c, "series.csv");
        write_series_csv(out, r.series, head);
    }
    {
        auto out = open_output(c, "series_samples.csv");
        write_sample_series_csv(out, r.series, head);
    }
    {
        auto out = open_output(c, "dos.csv");
        write_dos_csv(out, dos, head);
    }
    {
        auto out = open_output(c, "op_counts.json");
        out << to_json(r.counts) << '\n';
    }
}

} // namespace

int cmd_evolve(const RunConfig &c, std::ostream &log) {
    const auto resolved = resolve(c);
    const auto &h = require_hamiltonian(c);
    const TrotterPlan plan(h, resolved.grid.tau);
    StateVector state = c.ensemble == Ensemble::Basis
                            ? basis_state(h.num_spins(), 0)
                            : random_state(h.num_spins(), sampling_options(c).kind,
                                           sample_seed(c.seed, 0));
    OpCounts counts;
    auto norm_log = open_output(c, "norm_log.csv");
    norm_log << "# " << header(c, "evolve") << '\n' << "step,t,norm\n";
    norm_log << std::setprecision(17);
    norm_log << 0 << ',' << 0.0 << ',' << state.norm() << '\n';

    double max_drift = std::abs(state.norm() - 1.0);
    const auto start = Clock::now();
    std::int64_t done = 0;
    while (done < c.steps) {
        const std::int64_t chunk = std::min(c.norm_every, c.steps - done);
        evolve(state, plan, chunk, &counts);
        done += chunk;
        const double n = state.norm();
        max_drift = std::max(max_drift, std::abs(n - 1.0));
        norm_log << done << ',' << static_cast<double>(done) * plan.tau() << ',' << n << '\n';
    }
    const double elapsed = seconds_since(start);
    {
        auto out = open_output(c, "amplitudes.svec");
        write_amplitudes(state, out);
    }
    {
        auto out = open_output(c, "op_counts.json");
        out << to_json(counts) << '\n';
    }
    log << "L=" << h.num_spins() << " tau=" << plan.tau() << " steps=" << c.steps
        << " max_norm_drift=" << max_drift << '\n';
    if (c.steps > 0) {
        log << "step_wall_time_s=" << elapsed / static_cast<double>(c.steps) << '\n';
    }
    if (max_drift > kNormDriftLimit) {
        log << "error: norm drift " << max_drift << " exceeds " << kNormDriftLimit << '\n';
        return kNumericalFailure;
    }
    return kSuccess;
}

int cmd_dos(const RunConfig &c, std::ostream &log) {
    const auto run = run_sampling(c, log);
    const double lo = run.resolved.dos_lo;
    const double hi = run.resolved.dos_hi;
    const auto dos = clip_dos(dos_from_series(run.series, c.window), lo, hi);
    write_sampling_outputs(c, run, dos, "dos");
    log << "dos integral=" << dos.integral() << " (D=" << run.series.dimension
        << ") resolution=" << dos.resolution << '\n';
    return kSuccess;
}

int cmd_thermo(const RunConfig &c, std::ostream &log) {
    const auto run = run_sampling(c, log);
    const double lo = run.resolved.dos_lo;
    const double hi = run.resolved.dos_hi;
    const auto dos = clip_dos(dos_from_series(run.series, c.window), lo, hi);
    write_sampling_outputs(c, run, dos, "thermo");

    const auto &temps = run.resolved.temperatures;
    std::vector<SampleThermo> per_sample;
    for (const auto &d : per_sample_dos(run.series, c.window)) {
        per_sample.push_back(thermo_sample(clip_dos(d, lo, hi), temps));
    }
    const auto curve = sample_statistics(per_sample, temps, c.hamiltonian->num_spins());
    {
        auto out = open_output(c, "thermo.csv");
        write_thermo_csv(out, curve, header(c, "thermo"));
    }
    const auto valid_points = std::count_if(curve.valid_samples.begin(), curve.valid_samples.end(),
                                            [](int n) { return n > 0; });
    const auto full_points =
        std::count_if(curve.valid_samples.begin(), curve.valid_samples.end(),
                      [&](int n) { return n == curve.sample_count; });
    log << "thermo: " << full_points << "/" << temps.size() << " temperatures valid for all "
        << curve.sample_count << " samples\n";
    if (valid_points == 0) {
        log << "error: Z <= 0 for every sample at every temperature\n";
        return kNumericalFailure;
    }
    return kSuccess;
}

int cmd_oracle(const RunConfig &c, std::ostream &log) {
    const auto &h = require_hamiltonian(c);
    const auto resolved = resolve(c);
    SpectrumResult spectrum;
    try {
        spectrum = exact_spectrum(h);
    } catch (const SizeError &e) {
        throw ConfigError(e.what());
    }
    const auto fixture = make_fixture(spectrum, resolved.temperatures, c.preset);
    const auto hash = instance_hash(h);
    const auto path = c.fixtures_path.value_or(c.output_dir / "oracle_fixtures.json");

    FixtureSet set;
    if (std::filesystem::exists(path)) set = read_fixtures(path);
    int status = kSuccess;
    if (auto it = set.find(hash); it != set.end()) {
        const auto mismatch = compare_fixture(it->second, fixture);
        if (mismatch.empty()) {
            log << "fixture " << hash << " matches " << path.string() << '\n';
        } else {
            log << "error: fixture " << hash << " mismatch: " << mismatch << '\n';
            status = kNumericalFailure;
        }
    } else {
        set.emplace(hash, fixture);
        if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
        write_fixtures(path, set);
        log << "fixture " << hash << " written to " << path.string() << '\n';
    }
    {
        auto out = open_output(c, "thermo_exact.csv");
        write_thermo_csv(out, exact_thermo(spectrum, resolved.temperatures), header(c, "oracle"));
    }
    log << std::setprecision(12) << "L=" << h.num_spins() << " E0=" << fixture.ground_energy
        << " E0/L=" << fixture.ground_energy / h.num_spins() << '\n';
    return status;
}

int cmd_bench(const RunConfig &c, std::ostream &log) {
    auto out = open_output(c, "bench.csv");
    out << "# qdos " << kVersion << " command=bench (timings are machine-dependent)\n";
    out << "L,bonds,diag_seconds,rotation_seconds,step_seconds\n";
    out << std::setprecision(6);
    for (int l : c.bench_sizes) {
        const auto h = build_chain(l);
        const TrotterPlan plan(h, 0.05);
        StateVector state = random_state(l, RandomStateKind::RandomSign, sample_seed(c.seed, 0));
        const Gate2 rot = AxisRotation{RotationAxis::x, RotationDirection::forward}.matrix();
        double best_diag = 1e300, best_rot = 1e300, best_step = 1e300;
        for (int rep = 0; rep < c.bench_repeats; ++rep) {
            auto t0 = Clock::now();
            apply_diagonal_phase(state, *plan.z_full());
            best_diag = std::min(best_diag, seconds_since(t0));
            t0 = Clock::now();
            apply_single_qubit_layer(state, rot);
            best_rot = std::min(best_rot, seconds_since(t0));
            t0 = Clock::now();
            trotter_step(state, plan);
            best_step = std::min(best_step, seconds_since(t0));
        }
        out << l << ',' << h.num_bonds() << ',' << best_diag << ',' << best_rot << ','
            << best_step << '\n';
        log << "L=" << l << " diag=" << best_diag << " s rotation=" << best_rot
            << " s step=" << best_step << " s\n";
    }
    return kSuccess;
}

} // namespace qdos::cli
