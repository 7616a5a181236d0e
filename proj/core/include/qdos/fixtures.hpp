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
 * Oracle fixtures file: instance hash -> recorded exact results. The first
 * oracle run writes it; later runs recompute and compare, which keeps
 * every frozen reference value reproducible.
 *
 *   {"format": "qdos-oracle-fixtures", "version": 1,
 *    "instances": {"<hash>": {"label": ..., "L": ..., "eigenvalues": [...],
 *                             "eigenvalues_truncated": bool,
 *                             "eigenvalue_sum": ..., "eigenvalue_sum_sq": ...,
 *                             "E0": ..., "T": [...], "C_per_site": [...],
 *                             "E_per_site": [...]}}}
 *
 * Instances up to 6 spins store every eigenvalue; larger ones the lowest
 * 20 plus the two power-sum checksums.
 */
#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qdos/model.hpp"
#include "qdos/oracle.hpp"

namespace qdos {

inline constexpr int kFullSpectrumFixtureSpins = 6;
inline constexpr std::size_t kTruncatedFixtureEigenvalues = 20;

struct OracleFixture {
    std::string label;
    int num_spins = 0;
    std::vector<double> eigenvalues;
    bool eigenvalues_truncated = false;
    double eigenvalue_sum = 0.0;
    double eigenvalue_sum_sq = 0.0;
    double ground_energy = 0.0;
    std::vector<double> temperatures;
    std::vector<double> heat_per_site;
    std::vector<double> energy_per_site;
};

using FixtureSet = std::map<std::string, OracleFixture>;

/// Hex FNV-1a of the canonical JSON form of h.
std::string instance_hash(const SpinHamiltonian &h);

OracleFixture make_fixture(const SpectrumResult &spectrum, std::span<const double> temperatures,
                           std::string label = {});

void write_fixtures(const std::filesystem::path &path, const FixtureSet &fixtures);
/// Throws FormatError on unreadable or malformed files.
FixtureSet read_fixtures(const std::filesystem::path &path);

/// Empty string when `actual` matches `expected` within `tol` (absolute,
/// scaled by max(1, |value|)); otherwise a description of the first
/// mismatch.
std::string compare_fixture(const OracleFixture &expected, const OracleFixture &actual,
                            double tol = 1e-9);

} // namespace qdos
