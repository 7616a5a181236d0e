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
 * Correlation series c(t_k) ~ Tr e^{-i t_k H} from random states, and the
 * density of states obtained from it by a windowed discrete Fourier
 * transform.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "qdos/evolve.hpp"
#include "qdos/statevec.hpp"

namespace qdos {

enum class SeriesMethod {
    /// Keep |Phi>, evolve a copy, record <Phi|Phi(t_k)>.
    DirectInner,
    /// Evolve to t_k/2 and record sum_n b_n^2 (plain squares). Requires a
    /// real Hamiltonian matrix and a real |Phi>.
    HalfTime,
};

std::string_view to_string(SeriesMethod m) noexcept;
/// Accepts "direct" and "half_time".
SeriesMethod parse_series_method(std::string_view name);

/// Uniform measurement grid t_k = k * delta_t, k = 0..num_points-1, with
/// delta_t an integer number of Trotter steps.
struct TimeGrid {
    double tau = 0.0;
    std::int64_t steps_per_interval = 1;
    int num_points = 2;

    [[nodiscard]] double delta_t() const noexcept {
        return tau * static_cast<double>(steps_per_interval);
    }
};

/// pi / e_max. Throws std::invalid_argument unless e_max > 0.
double nyquist_interval(double e_max);

/// Grid with an explicit delta_t, which must be a multiple of tau (relative
/// tolerance 1e-9); for HalfTime the multiple must be even.
TimeGrid make_time_grid(double tau, double delta_t, int num_points, SeriesMethod method);

/// tau = min(tau0, pi/e_max); delta_t = pi/e_max rounded down to a multiple
/// of tau (an even multiple for HalfTime, halving tau if necessary).
TimeGrid nyquist_time_grid(double e_max, double tau0, int num_points, SeriesMethod method);

/// <Phi|U~(t_k)|Phi> for every grid point; unscaled (c_0 = <Phi|Phi> = 1).
/// Throws IncompatibleMethod for HalfTime with a complex H or complex Phi.
std::vector<Complex> correlation_sample(const TrotterPlan &plan, const StateVector &phi,
                                        const TimeGrid &grid, SeriesMethod method,
                                        OpCounts *counts = nullptr);

struct CorrelationSeries {
    double delta_t = 0.0;
    std::uint64_t dimension = 0;
    /// D times the sample mean of <Phi|e^{-i t_k H}|Phi>.
    std::vector<Complex> mean;
    /// Unbiased across-sample standard deviation of D <Phi|..|Phi>; NaN for
    /// a single sample.
    std::vector<double> sd_re;
    std::vector<double> sd_im;
    /// Per-sample series, already multiplied by D.
    std::vector<std::vector<Complex>> samples;

    [[nodiscard]] int num_points() const noexcept { return static_cast<int>(mean.size()); }
    [[nodiscard]] int sample_count() const noexcept { return static_cast<int>(samples.size()); }
    [[nodiscard]] double time(int k) const noexcept { return delta_t * k; }
};

/// Merges raw per-sample series (as returned by correlation_sample) into the
/// trace estimate. The factor D between unit-norm states and the trace is
/// applied here and nowhere else. Throws DimensionMismatch on unequal
/// lengths and std::invalid_argument on an empty sample set.
CorrelationSeries trace_estimate(std::span<const std::vector<Complex>> raw,
                                 std::uint64_t dimension, double delta_t);

/// Which states feed the estimator.
struct SamplingOptions {
    int samples = 20;
    RandomStateKind kind = RandomStateKind::RandomSign;
    std::uint64_t seed = 0;
    SeriesMethod method = SeriesMethod::DirectInner;
    /// Use all D basis states instead of random ones (exact trace up to the
    /// Trotter error); `samples` and `kind` are then ignored. The result is
    /// a single series: one basis state alone does not estimate the trace,
    /// so there is no across-sample spread.
    bool basis_states = false;
};

/// Runs correlation_sample for every sample (sample s uses the stream seed
/// sample_seed(seed, s)) and reduces with trace_estimate. Samples run in
/// parallel; the result does not depend on the thread count.
CorrelationSeries sample_trace(const TrotterPlan &plan, const TimeGrid &grid,
                               const SamplingOptions &options, OpCounts *counts = nullptr);

/// Hann is the default. The Gaussian is cut at 3 sigma (edge weight about
/// 0.011); its truncation ringing below the ground state is amplified by
/// e^{-beta eps} and spoils thermodynamics for T below about |J|.
enum class WindowKind { Gaussian, Hann };

std::string_view to_string(WindowKind w) noexcept;
/// Accepts "gaussian" and "hann".
WindowKind parse_window_kind(std::string_view name);

/// Taper applied to the series before the transform, as a function of the
/// lag k for a series of N points. Gaussian: exp(-(3k/N)^2 / 2).
/// Hann: (1 + cos(pi k / N)) / 2.
double window_weight(WindowKind w, int k, int num_points) noexcept;

struct DosEstimate {
    /// Uniform grid covering one period [-pi/dt, pi/dt) of the transform,
    /// which contains [-E_max, E_max] whenever dt <= pi/E_max.
    std::vector<double> energies;
    std::vector<double> density;
    /// Across-sample standard deviation; NaN when built from one series.
    std::vector<double> sd;
    double grid_spacing = 0.0;
    /// pi / (N dt): spectral resolution of the series.
    double resolution = 0.0;
    WindowKind window = WindowKind::Hann;
    int sample_count = 1;
    /// Largest |Im d_j| seen before the imaginary part was dropped.
    double max_imag = 0.0;

    /// Riemann sum of the density; equals c_0 up to rounding.
    [[nodiscard]] double integral() const noexcept;
};

/// d_j = (dt/2pi) sum_{|k|<N} w(|k|) e^{i eps_j t_k} c_k with
/// c_{-k} = conj(c_k), evaluated by FFT on a grid zero-padded to
/// 4 (2N - 1) points.
DosEstimate dos_from_series(std::span<const Complex> series, double delta_t,
                            WindowKind window = WindowKind::Hann);

/// DOS of the mean series, with the across-sample SD of the per-sample DOS.
DosEstimate dos_from_series(const CorrelationSeries &series,
                            WindowKind window = WindowKind::Hann);

/// Copy of `dos` keeping only grid points with lo <= eps <= hi. Thermodynamic
/// sums over the clipped grid skip the empty region beyond the energy bound,
/// where window sidelobes weighted by e^{-beta eps} would otherwise dominate
/// Z at low temperature. Throws std::invalid_argument if no point remains.
DosEstimate clip_dos(const DosEstimate &dos, double lo, double hi);

/// One DOS per sample series.
std::vector<DosEstimate> per_sample_dos(const CorrelationSeries &series,
                                        WindowKind window = WindowKind::Hann);

/// Columns: t,re_c,im_c,sd_re,sd_im. A nonempty `comment` is written first
/// as a "# ..." line.
void write_series_csv(std::ostream &out, const CorrelationSeries &series,
                      std::string_view comment = {});

/// Columns: sample,t,re_c,im_c (D-scaled).
void write_sample_series_csv(std::ostream &out, const CorrelationSeries &series,
                             std::string_view comment = {});

/// Columns: epsilon,dos_mean,dos_sd.
void write_dos_csv(std::ostream &out, const DosEstimate &dos, std::string_view comment = {});

} // namespace qdos
