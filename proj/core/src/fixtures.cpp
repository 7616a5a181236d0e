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

#include "qdos/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qdos/error.hpp"
#include "qdos/hash.hpp"
#include "qdos/model_io.hpp"

namespace qdos {

namespace {

using nlohmann::ordered_json;

bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

std::string compare_lists(const char *what, const std::vector<double> &a,
                          const std::vector<double> &b, double tol) {
    if (a.size() != b.size()) {
        return std::string(what) + ": length " + std::to_string(b.size()) + " vs expected " +
               std::to_string(a.size());
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!close(b[i], a[i], tol)) {
            std::ostringstream s;
            s.precision(17);
            s << what << "[" << i << "]: " << b[i] << " vs expected " << a[i];
            return s.str();
        }
    }
    return {};
}

} // namespace

std::string instance_hash(const SpinHamiltonian &h) { return hex64(fnv1a64(to_json(h))); }

OracleFixture make_fixture(const SpectrumResult &spectrum, std::span<const double> temperatures,
                           std::string label) {
    OracleFixture f;
    f.label = std::move(label);
    f.num_spins = spectrum.num_spins;
    const auto &ev = spectrum.eigenvalues;
    f.eigenvalues_truncated =
        spectrum.num_spins > kFullSpectrumFixtureSpins && ev.size() > kTruncatedFixtureEigenvalues;
    const std::size_t keep = f.eigenvalues_truncated ? kTruncatedFixtureEigenvalues : ev.size();
    f.eigenvalues.assign(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(keep));
    for (double e : ev) {
        f.eigenvalue_sum += e;
        f.eigenvalue_sum_sq += e * e;
    }
    f.ground_energy = ev.empty() ? 0.0 : ev.front();
    const auto curve = exact_thermo(spectrum, temperatures);
    f.temperatures = curve.temperatures;
    f.heat_per_site = curve.heat_per_site;
    f.energy_per_site = curve.energy_per_site;
    return f;
}

void write_fixtures(const std::filesystem::path &path, const FixtureSet &fixtures) {
    ordered_json instances = ordered_json::object();
    for (const auto &[hash, f] : fixtures) {
        ordered_json j;
        j["label"] = f.label;
        j["L"] = f.num_spins;
        j["eigenvalues"] = f.eigenvalues;
        j["eigenvalues_truncated"] = f.eigenvalues_truncated;
        j["eigenvalue_sum"] = f.eigenvalue_sum;
        j["eigenvalue_sum_sq"] = f.eigenvalue_sum_sq;
        j["E0"] = f.ground_energy;
        j["T"] = f.temperatures;
        j["C_per_site"] = f.heat_per_site;
        j["E_per_site"] = f.energy_per_site;
        instances[hash] = std::move(j);
    }
    ordered_json root;
    root["format"] = "qdos-oracle-fixtures";
    root["version"] = 1;
    root["instances"] = std::move(instances);
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write fixtures file " + path.string());
    out << root.dump(2) << '\n';
}

FixtureSet read_fixtures(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open fixtures file " + path.string());
    try {
        const auto root = ordered_json::parse(in);
        if (root.at("format").get<std::string>() != "qdos-oracle-fixtures" ||
            root.at("version").get<int>() != 1) {
            throw FormatError("unsupported fixtures file " + path.string());
        }
        FixtureSet out;
        for (const auto &[hash, j] : root.at("instances").items()) {
            OracleFixture f;
            f.label = j.value("label", "");
            f.num_spins = j.at("L").get<int>();
            f.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
            f.eigenvalues_truncated = j.at("eigenvalues_truncated").get<bool>();
            f.eigenvalue_sum = j.at("eigenvalue_sum").get<double>();
            f.eigenvalue_sum_sq = j.at("eigenvalue_sum_sq").get<double>();
            f.ground_energy = j.at("E0").get<double>();
            f.temperatures = j.at("T").get<std::vector<double>>();
            f.heat_per_site = j.at("C_per_site").get<std::vector<double>>();
            f.energy_per_site = j.at("E_per_site").get<std::vector<double>>();
            out.emplace(hash, std::move(f));
        }
        return out;
    } catch (const ordered_json::exception &e) {
        throw FormatError("malformed fixtures file " + path.string() + ": " + e.what());
    }
}

std::string compare_fixture(const OracleFixture &expected, const OracleFixture &actual,
                            double tol) {
    if (expected.num_spins != actual.num_spins) return "L differs";
    if (expected.eigenvalues_truncated != actual.eigenvalues_truncated) {
        return "eigenvalue truncation differs";
    }
    if (auto m = compare_lists("eigenvalues", expected.eigenvalues, actual.eigenvalues, tol);
        !m.empty()) {
        return m;
    }
    // Sums of D terms carry rounding of order D eps.
    const double sum_tol = tol * std::max(1.0, static_cast<double>(std::uint64_t{1} << expected.num_spins) * 1e-3);
    if (!close(actual.eigenvalue_sum, expected.eigenvalue_sum, sum_tol)) return "eigenvalue sum differs";
    if (!close(actual.eigenvalue_sum_sq, expected.eigenvalue_sum_sq, sum_tol)) {
        return "eigenvalue sum of squares differs";
    }
    if (!close(actual.ground_energy, expected.ground_energy, tol)) return "E0 differs";
    if (auto m = compare_lists("T", expected.temperatures, actual.temperatures, tol); !m.empty()) {
        return m;
    }
    if (auto m = compare_lists("C_per_site", expected.heat_per_site, actual.heat_per_site, tol);
        !m.empty()) {
        return m;
    }
    return compare_lists("E_per_site", expected.energy_per_site, actual.energy_per_site, tol);
}

} // namespace qdos
