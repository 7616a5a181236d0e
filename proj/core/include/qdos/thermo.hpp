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

/**
 * @file
 * Canonical-ensemble thermodynamics (k_B = 1) from a density of states:
 *
 *   Z = sum_j e^{-beta eps_j} d_j de
 *   E = Z^{-1} sum_j eps_j e^{-beta eps_j} d_j de
 *   C = beta^2 (Z^{-1} sum_j eps_j^2 e^{-beta eps_j} d_j de - E^2)
 *
 * All sums are evaluated with exponents shifted by the grid minimum so
 * nothing overflows; Z itself is carried as log Z.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qdos/spectral.hpp"

namespace qdos {

struct ThermoPoint {
    double log_z = 0.0;
    double energy = 0.0;
    double heat = 0.0;
};

/// Z at inverse temperature beta (may overflow to +inf for large beta; use
/// log_partition_function then). Throws DegenerateDos if the quadrature
/// gives Z <= 0, and std::invalid_argument unless beta > 0.
double partition_function(const DosEstimate &dos, double beta);
double log_partition_function(const DosEstimate &dos, double beta);

/// Z, E and C at one beta. Same errors as partition_function.
ThermoPoint energy_and_heat(const DosEstimate &dos, double beta);

/// n points log-spaced on [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int n);

/// 60 log-spaced temperatures on [0.05, 5] times `scale` (typically |J|).
std::vector<double> default_temperatures(double scale = 1.0);

/// Thermo of one sample on a temperature grid; points where Z <= 0 are
/// empty instead of aborting the whole curve.
struct SampleThermo {
    std::vector<std::optional<ThermoPoint>> points;
};

SampleThermo thermo_sample(const DosEstimate &dos, std::span<const double> temperatures);

struct ThermoCurve {
    int num_sites = 1;
    int sample_count = 0;
    std::vector<double> temperatures;
    /// Means over the valid samples at each T.
    std::vector<double> log_z;
    std::vector<double> energy;
    std::vector<double> heat;
    std::vector<double> energy_per_site;
    std::vector<double> heat_per_site;
    /// Unbiased SD of C/L over valid samples; NaN with fewer than 2.
    std::vector<double> heat_per_site_sd;
    std::vector<int> valid_samples;
};

/// Mean and across-sample SD of E, C (and per-site values) at each T.
/// `samples` must all be evaluated on `temperatures`.
ThermoCurve sample_statistics(std::span<const SampleThermo> samples,
                              std::span<const double> temperatures, int num_sites);

/// Columns: T,E_per_site_mean,C_per_site_mean,C_per_site_sd,n_valid_samples.
void write_thermo_csv(std::ostream &out, const ThermoCurve &curve, std::string_view comment = {});

} // namespace qdos
