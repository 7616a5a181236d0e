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
 * Dense exact-diagonalization reference. Everything here scales as
 * 2^(3L) and is capped at kDenseSpinCap spins; it exists to validate the
 * stochastic pipeline on small systems.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdos/model.hpp"
#include "qdos/spectral.hpp"
#include "qdos/thermo.hpp"

namespace qdos {

struct SpectrumResult {
    int num_spins = 0;
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Columns are eigenvectors, in eigenvalue order (phases arbitrary).
    std::optional<Eigen::MatrixXcd> eigenvectors;
};

/// Full Hermitian eigendecomposition of dense_matrix(h). Throws SizeError
/// beyond `cap` spins.
SpectrumResult exact_spectrum(const SpinHamiltonian &h, bool with_vectors = false,
                              int cap = kDenseSpinCap);

/// c_k = sum_i e^{-i t_k E_i}, t_k = k delta_t, as a one-sample series.
CorrelationSeries exact_trace_series(const SpectrumResult &spectrum, int num_points,
                                     double delta_t);

/// Z, E, C from direct spectral sums (shifted by the ground energy).
ThermoPoint exact_thermo_point(const SpectrumResult &spectrum, double beta);
ThermoCurve exact_thermo(const SpectrumResult &spectrum, std::span<const double> temperatures);

/// e^{-i t H} from the eigendecomposition; needs eigenvectors.
Eigen::MatrixXcd spectral_propagator(const SpectrumResult &spectrum, double t);

/// e^{-i t H} by scaling and squaring (Eigen's MatrixFunctions module),
/// independent of the eigensolver.
Eigen::MatrixXcd expm_propagator(const SpinHamiltonian &h, double t, int cap = kDenseSpinCap);

} // namespace qdos
