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

#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qdos/error.hpp"
#include "qdos/version.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string preset;
    std::uint64_t seed = 0;
    int samples = 0;
    int threads = 0;
};

void add_common_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config, "Run config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--seed", f.seed, "Base RNG seed");
    cmd->add_option("--samples", f.samples, "Number of random states S")->check(CLI::PositiveNumber);
    cmd->add_option("--preset", f.preset, "Triangular benchmark instance")
        ->check(CLI::IsMember({"tri6", "tri10", "tri15", "tri21"}));
    cmd->add_option("--threads", f.threads, "Worker threads (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
}

} // namespace

int main(int argc, char **argv) {
    using namespace qdos::cli;

    CLI::App app{"Spin-1/2 dynamics, stochastic density of states and thermodynamics"};
    app.set_version_flag("--version", std::string(qdos::kVersion));
    app.require_subcommand(1);

    Flags flags;
    struct Sub {
        const char *name;
        const char *help;
        int (*run)(const RunConfig &, std::ostream &);
    };
    const Sub subs[] = {
        {"evolve", "Evolve one random state; write amplitudes and a norm log", cmd_evolve},
        {"dos", "Sample Tr e^{-itH} and write series and DOS CSVs", cmd_dos},
        {"thermo", "Full pipeline through E(T), C(T) with per-sample SD", cmd_thermo},
        {"oracle", "Exact diagonalization; write or check the fixtures file", cmd_oracle},
        {"bench", "Time the propagator kernels on Heisenberg chains", cmd_bench},
    };
    std::vector<std::pair<CLI::App *, const Sub *>> registered;
    for (const auto &s : subs) {
        auto *cmd = app.add_subcommand(s.name, s.help);
        add_common_flags(cmd, flags);
        registered.emplace_back(cmd, &s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsageError;
    }

    for (const auto &[cmd, sub] : registered) {
        if (!cmd->parsed()) continue;
        Overrides ov;
        if (cmd->count("--preset") > 0) ov.preset = flags.preset;
        if (cmd->count("--out") > 0) ov.out = flags.out;
        if (cmd->count("--seed") > 0) ov.seed = flags.seed;
        if (cmd->count("--samples") > 0) ov.samples = flags.samples;
        if (cmd->count("--threads") > 0) ov.threads = flags.threads;
        try {
            std::optional<std::filesystem::path> path;
            if (!flags.config.empty()) path = flags.config;
            const RunConfig config = load_run_config(path, ov);
            if (config.threads > 0) omp_set_num_threads(config.threads);
            return sub->run(config, std::cout);
        } catch (const ConfigError &e) {
            std::cerr << "qdos " << sub->name << ": " << e.what() << '\n';
            return kUsageError;
        } catch (const qdos::IncompatibleMethod &e) {
            std::cerr << "qdos " << sub->name << ": " << e.what() << '\n';
            return kUsageError;
        } catch (const qdos::FormatError &e) {
            std::cerr << "qdos " << sub->name << ": " << e.what() << '\n';
            return kUsageError;
        } catch (const std::exception &e) {
            std::cerr << "qdos " << sub->name << ": " << e.what() << '\n';
            return kNumericalFailure;
        }
    }
    return kUsageError;
}
