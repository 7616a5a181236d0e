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

#include "qdos/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csv_util.hpp"
#include "qdos/error.hpp"

namespace qdos {

namespace {

struct Moments {
    double log_scale; // log of the common prefactor e^{-beta eps_min} de
    double m0;
    double m1;
    double central2; // sum (eps - E)^2 w, with E = m1 / m0
};

Moments shifted_moments(const DosEstimate &dos, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be positive and finite");
    }
    if (dos.energies.empty()) throw std::invalid_argument("empty DOS");
    const double eps_min = *std::min_element(dos.energies.begin(), dos.energies.end());
    Moments m{-beta * eps_min + std::log(dos.grid_spacing), 0.0, 0.0, 0.0};
    std::vector<double> w(dos.energies.size());
    for (std::size_t j = 0; j < dos.energies.size(); ++j) {
        const double e = dos.energies[j];
        w[j] = std::exp(-beta * (e - eps_min)) * dos.density[j];
        m.m0 += w[j];
        m.m1 += e * w[j];
    }
    if (!(m.m0 > 0.0)) {
        throw DegenerateDos("partition function quadrature gave Z <= 0 at beta = " +
                            std::to_string(beta) + "; the DOS is too noisy at this temperature");
    }
    // Second pass about the mean: the raw-moment form loses C to cancellation
    // at low temperature.
    const double mean = m.m1 / m.m0;
    for (std::size_t j = 0; j < dos.energies.size(); ++j) {
        const double d = dos.energies[j] - mean;
        m.central2 += d * d * w[j];
    }
    return m;
}


} // namespace

double log_partition_function(const DosEstimate &dos, double beta) {
    const auto m = shifted_moments(dos, beta);
    return m.log_scale + std::log(m.m0);
}

double partition_function(const DosEstimate &dos, double beta) {
    return std::exp(log_partition_function(dos, beta));
}

ThermoPoint energy_and_heat(const DosEstimate &dos, double beta) {
    const auto m = shifted_moments(dos, beta);
    ThermoPoint p;
    p.log_z = m.log_scale + std::log(m.m0);
    p.energy = m.m1 / m.m0;
    p.heat = beta * beta * m.central2 / m.m0;
    return p;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
        throw std::invalid_argument("log_spaced needs 0 < lo <= hi and n >= 1");
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
    out.back() = hi;
    return out;
}

std::vector<double> default_temperatures(double scale) { return log_spaced(0.05 * scale, 5.0 * scale, 60); }

SampleThermo thermo_sample(const DosEstimate &dos, std::span<const double> temperatures) {
    SampleThermo out;
    out.points.reserve(temperatures.size());
    for (double t : temperatures) {
        try {
            out.points.emplace_back(energy_and_heat(dos, 1.0 / t));
        } catch (const DegenerateDos &) {
            out.points.emplace_back(std::nullopt);
        }
    }
    return out;
}

ThermoCurve sample_statistics(std::span<const SampleThermo> samples,
                              std::span<const double> temperatures, int num_sites) {
    if (num_sites < 1) throw std::invalid_argument("num_sites must be positive");
    const std::size_t nt = temperatures.size();
    for (const auto &s : samples) {
        if (s.points.size() != nt) {
            throw DimensionMismatch("sample thermo evaluated on a different temperature grid");
        }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ThermoCurve c;
    c.num_sites = num_sites;
    c.sample_count = static_cast<int>(samples.size());
    c.temperatures.assign(temperatures.begin(), temperatures.end());
    c.log_z.assign(nt, nan);
    c.energy.assign(nt, nan);
    c.heat.assign(nt, nan);
    c.energy_per_site.assign(nt, nan);
    c.heat_per_site.assign(nt, nan);
    c.heat_per_site_sd.assign(nt, nan);
    c.valid_samples.assign(nt, 0);

    const double inv_l = 1.0 / num_sites;
    for (std::size_t t = 0; t < nt; ++t) {
        int n = 0;
        double lz = 0.0, e = 0.0, h = 0.0;
        for (const auto &s : samples) {
            if (!s.points[t]) continue;
            ++n;
            lz += s.points[t]->log_z;
            e += s.points[t]->energy;
            h += s.points[t]->heat;
        }
        c.valid_samples[t] = n;
        if (n == 0) continue;
        c.log_z[t] = lz / n;
        c.energy[t] = e / n;
        c.heat[t] = h / n;
        c.energy_per_site[t] = c.energy[t] * inv_l;
        c.heat_per_site[t] = c.heat[t] * inv_l;
        if (n < 2) continue;
        // Two passes: deviations from the mean, so equal samples give exactly 0.
        double ss = 0.0;
        for (const auto &s : samples) {
            if (!s.points[t]) continue;
            const double d = (s.points[t]->heat - c.heat[t]) * inv_l;
            ss += d * d;
        }
        c.heat_per_site_sd[t] = std::sqrt(ss / (n - 1));
    }
    return c;
}

void write_thermo_csv(std::ostream &out, const ThermoCurve &curve, std::string_view comment) {
    detail::put_comment(out, comment);
    out << "T,E_per_site_mean,C_per_site_mean,C_per_site_sd,n_valid_samples\n";
    for (std::size_t t = 0; t < curve.temperatures.size(); ++t) {
        detail::put_number(out, curve.temperatures[t]);
        out << ',';
        detail::put_number(out, curve.energy_per_site[t]);
        out << ',';
        detail::put_number(out, curve.heat_per_site[t]);
        out << ',';
        detail::put_number(out, curve.heat_per_site_sd[t]);
        out << ',' << curve.valid_samples[t] << '\n';
    }
}

} // namespace qdos
