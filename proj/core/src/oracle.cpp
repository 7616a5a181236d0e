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

#include "qdos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace qdos {

SpectrumResult exact_spectrum(const SpinHamiltonian &h, bool with_vectors, int cap) {
    const Eigen::MatrixXcd m = dense_matrix(h, cap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense eigensolver did not converge");
    }
    SpectrumResult out;
    out.num_spins = h.num_spins();
    const auto &ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    // Eigen already returns ascending order; keep the guarantee explicit.
    if (!std::is_sorted(out.eigenvalues.begin(), out.eigenvalues.end())) {
        std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    }
    if (with_vectors) out.eigenvectors = solver.eigenvectors();
    return out;
}

CorrelationSeries exact_trace_series(const SpectrumResult &spectrum, int num_points,
                                     double delta_t) {
    if (num_points < 1) throw std::invalid_argument("num_points must be positive");
    std::vector<Complex> c(static_cast<std::size_t>(num_points));
    for (int k = 0; k < num_points; ++k) {
        const double t = k * delta_t;
        double re = 0.0, im = 0.0;
        for (double e : spectrum.eigenvalues) {
            re += std::cos(t * e);
            im -= std::sin(t * e);
        }
        c[static_cast<std::size_t>(k)] = {re, im};
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CorrelationSeries out;
    out.delta_t = delta_t;
    out.dimension = spectrum.eigenvalues.size();
    out.mean = c;
    out.sd_re.assign(c.size(), nan);
    out.sd_im.assign(c.size(), nan);
    out.samples.push_back(std::move(c));
    return out;
}

ThermoPoint exact_thermo_point(const SpectrumResult &spectrum, double beta) {
    if (spectrum.eigenvalues.empty()) throw std::invalid_argument("empty spectrum");
    const double e0 = spectrum.eigenvalues.front();
    double z = 0.0, m1 = 0.0;
    for (double e : spectrum.eigenvalues) {
        const double w = std::exp(-beta * (e - e0));
        z += w;
        m1 += e * w;
    }
    ThermoPoint p;
    p.energy = m1 / z;
    double var = 0.0;
    for (double e : spectrum.eigenvalues) {
        const double d = e - p.energy;
        var += d * d * std::exp(-beta * (e - e0));
    }
    p.log_z = -beta * e0 + std::log(z);
    p.heat = beta * beta * var / z;
    return p;
}

ThermoCurve exact_thermo(const SpectrumResult &spectrum, std::span<const double> temperatures) {
    SampleThermo one;
    for (double t : temperatures) one.points.emplace_back(exact_thermo_point(spectrum, 1.0 / t));
    return sample_statistics(std::span<const SampleThermo>(&one, 1), temperatures,
                             spectrum.num_spins);
}

Eigen::MatrixXcd spectral_propagator(const SpectrumResult &spectrum, double t) {
    if (!spectrum.eigenvectors) {
        throw std::invalid_argument("spectral propagator needs eigenvectors");
    }
    const auto &v = *spectrum.eigenvectors;
    Eigen::VectorXcd phases(static_cast<Eigen::Index>(spectrum.eigenvalues.size()));
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::polar(1.0, -t * spectrum.eigenvalues[static_cast<std::size_t>(i)]);
    }
    return v * phases.asDiagonal() * v.adjoint();
}

Eigen::MatrixXcd expm_propagator(const SpinHamiltonian &h, double t, int cap) {
    const Eigen::MatrixXcd m = dense_matrix(h, cap);
    const Eigen::MatrixXcd a = std::complex<double>(0.0, -t) * m;
    return a.exp();
}

} // namespace qdos
