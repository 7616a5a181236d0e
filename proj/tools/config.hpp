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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdos/model.hpp"
#include "qdos/spectral.hpp"
#include "qdos/statevec.hpp"

namespace qdos::cli {

/// Usage or configuration problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Ensemble { RandomSign, GaussianComplex, Basis };

struct RunConfig {
    std::string preset;
    std::optional<SpinHamiltonian> hamiltonian;
    /// Trotter step; nullopt selects min(0.05 / coupling scale, Nyquist dt).
    std::optional<double> tau;
    /// Series length N; 0 selects ceil(pi / (dt * 0.02 * coupling scale)).
    int time_samples = 0;
    /// Measurement interval; nullopt selects the Nyquist rule for the energy
    /// bound widened by a small guard band.
    std::optional<double> delta_t;
    int samples = 20;
    Ensemble ensemble = Ensemble::RandomSign;
    std::uint64_t seed = 1;
    SeriesMethod method = SeriesMethod::DirectInner;
    WindowKind window = WindowKind::Hann;
    /// Explicit list; empty means the default log grid scaled by |J|.
    std::vector<double> temperatures;
    std::int64_t steps = 1000;
    std::int64_t norm_every = 100;
    std::vector<int> bench_sizes{12, 14, 16, 18, 20};
    int bench_repeats = 3;
    std::filesystem::path output_dir = "qdos_out";
    std::optional<std::filesystem::path> fixtures_path;
    int threads = 0;
};

/// Command-line overrides applied on top of a config file.
struct Overrides {
    std::optional<std::string> preset;
    std::optional<std::filesystem::path> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<int> threads;
};

/// Names accepted by "preset" / --preset.
const std::vector<std::string> &preset_names();

/// Builds a config from JSON text (may be empty when only a preset is
/// given). Relative "hamiltonian_file" paths resolve against `base_dir`.
/// Throws ConfigError on any problem.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path &base_dir,
                           const Overrides &overrides = {});

RunConfig load_run_config(const std::optional<std::filesystem::path> &path,
                          const Overrides &overrides = {});

/// Everything that influences numerical results, in canonical JSON form.
std::string canonical_json(const RunConfig &config);
std::string config_hash(const RunConfig &config);

/// The configured Hamiltonian; throws ConfigError when none was given (only
/// the bench command runs without one).
const SpinHamiltonian &require_hamiltonian(const RunConfig &config);

/// Resolved simulation parameters derived from a config.
struct ResolvedRun {
    double energy_bound = 0.0;
    /// DOS and thermodynamic sums are restricted to [dos_lo, dos_hi]: the
    /// cluster energy range widened by the window main lobe.
    double dos_lo = 0.0;
    double dos_hi = 0.0;
    TimeGrid grid;
    std::vector<double> temperatures;
};

ResolvedRun resolve(const RunConfig &config);

SamplingOptions sampling_options(const RunConfig &config);

} // namespace qdos::cli
