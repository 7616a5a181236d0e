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

#include "qdos/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "csv_util.hpp"
#include "qdos/error.hpp"

namespace qdos {

namespace {

// FFTW's planner is not reentrant; execution is.
std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place backward (e^{+i...}) transform.
void inverse_dft(std::vector<Complex> &data) {
    auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

double sample_sd(double sum, double sum_sq, int n) {
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1);
    return std::sqrt(std::max(var, 0.0));
}

double real_square_sum(const StateVector &s) {
    double acc = 0.0;
    for (const auto &b : s.amplitudes()) acc += b.real() * b.real() - b.imag() * b.imag();
    return acc;
}

Complex complex_square_sum(const StateVector &s) {
    double re = 0.0;
    double im = 0.0;
    for (const auto &b : s.amplitudes()) {
        re += b.real() * b.real() - b.imag() * b.imag();
        im += 2.0 * b.real() * b.imag();
    }
    return {re, im};
}

} // namespace

std::string_view to_string(SeriesMethod m) noexcept {
    return m == SeriesMethod::DirectInner ? "direct" : "half_time";
}

SeriesMethod parse_series_method(std::string_view name) {
    if (name == "direct") return SeriesMethod::DirectInner;
    if (name == "half_time") return SeriesMethod::HalfTime;
    throw FormatError("unknown series method '" + std::string(name) + "'");
}

std::string_view to_string(WindowKind w) noexcept {
    return w == WindowKind::Gaussian ? "gaussian" : "hann";
}

WindowKind parse_window_kind(std::string_view name) {
    if (name == "gaussian") return WindowKind::Gaussian;
    if (name == "hann") return WindowKind::Hann;
    throw FormatError("unknown window '" + std::string(name) + "'");
}

double nyquist_interval(double e_max) {
    if (!(e_max > 0.0) || !std::isfinite(e_max)) {
        throw std::invalid_argument("Nyquist interval needs a positive energy bound");
    }
    return std::numbers::pi / e_max;
}

TimeGrid make_time_grid(double tau, double delta_t, int num_points, SeriesMethod method) {
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be positive");
    if (num_points < 2) throw std::invalid_argument("a series needs at least 2 points");
    const double ratio = delta_t / tau;
    const auto steps = static_cast<std::int64_t>(std::llround(ratio));
    if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio) {
        throw std::invalid_argument("delta_t must be an integer multiple of tau");
    }
    if (method == SeriesMethod::HalfTime && steps % 2 != 0) {
        throw std::invalid_argument("half-time series need delta_t to be an even multiple of tau");
    }
    return {tau, steps, num_points};
}

TimeGrid nyquist_time_grid(double e_max, double tau0, int num_points, SeriesMethod method) {
    if (!(tau0 > 0.0)) throw std::invalid_argument("tau0 must be positive");
    if (num_points < 2) throw std::invalid_argument("a series needs at least 2 points");
    const double dt_max = nyquist_interval(e_max);
    double tau = std::min(tau0, dt_max);
    // Guard the floor against ratios like 2.9999999999.
    auto steps = static_cast<std::int64_t>(std::floor(dt_max / tau * (1.0 + 1e-12)));
    if (method == SeriesMethod::HalfTime) {
        if (steps < 2) {
            tau *= 0.5;
            steps = 2;
        } else {
            steps -= steps % 2;
        }
    }
    return {tau, std::max<std::int64_t>(steps, 1), num_points};
}

std::vector<Complex> correlation_sample(const TrotterPlan &plan, const StateVector &phi,
                                        const TimeGrid &grid, SeriesMethod method,
                                        OpCounts *counts) {
    if (grid.num_points < 1) throw std::invalid_argument("empty time grid");
    if (phi.num_spins() != plan.num_spins()) {
        throw DimensionMismatch("state and plan have different numbers of spins");
    }
    if (std::abs(grid.tau - plan.tau()) > 1e-12 * plan.tau()) {
        throw std::invalid_argument("time grid and plan use different tau");
    }
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(grid.num_points));
    StateVector work = phi;

    if (method == SeriesMethod::DirectInner) {
        out.push_back(inner_product(phi, work));
        for (int k = 1; k < grid.num_points; ++k) {
            evolve(work, plan, grid.steps_per_interval, counts);
            out.push_back(inner_product(phi, work));
        }
        return out;
    }

    if (!plan.hamiltonian().is_real()) {
        throw IncompatibleMethod("half_time method requires a real Hamiltonian matrix (all h^y = 0); "
                                 "use the direct method");
    }
    if (!phi.is_real()) {
        throw IncompatibleMethod("half_time method requires a real initial state; "
                                 "use random_sign states or the direct method");
    }
    if (grid.steps_per_interval % 2 != 0) {
        throw std::invalid_argument("half-time series need an even number of steps per interval");
    }
    // For real symmetric H the propagator is symmetric, so
    // <Phi|U(t)|Phi> = (U(t/2) Phi)^T (U(t/2) Phi) = sum_n b_n^2.
    out.push_back(real_square_sum(work));
    for (int k = 1; k < grid.num_points; ++k) {
        evolve(work, plan, grid.steps_per_interval / 2, counts);
        out.push_back(complex_square_sum(work));
    }
    return out;
}

CorrelationSeries trace_estimate(std::span<const std::vector<Complex>> raw,
                                 std::uint64_t dimension, double delta_t) {
    if (raw.empty()) throw std::invalid_argument("trace estimate needs at least one sample");
    const std::size_t n = raw.front().size();
    for (const auto &s : raw) {
        if (s.size() != n) throw DimensionMismatch("samples have different time grids");
    }
    const auto d = static_cast<double>(dimension);
    const int count = static_cast<int>(raw.size());

    CorrelationSeries out;
    out.delta_t = delta_t;
    out.dimension = dimension;
    out.mean.assign(n, Complex{});
    out.sd_re.assign(n, 0.0);
    out.sd_im.assign(n, 0.0);
    out.samples.reserve(raw.size());
    for (const auto &s : raw) {
        std::vector<Complex> scaled(s);
        for (auto &c : scaled) c *= d;
        out.samples.push_back(std::move(scaled));
    }
    for (std::size_t k = 0; k < n; ++k) {
        double sr = 0.0, si = 0.0, sr2 = 0.0, si2 = 0.0;
        for (const auto &s : out.samples) {
            sr += s[k].real();
            si += s[k].imag();
            sr2 += s[k].real() * s[k].real();
            si2 += s[k].imag() * s[k].imag();
        }
        out.mean[k] = {sr / count, si / count};
        out.sd_re[k] = sample_sd(sr, sr2, count);
        out.sd_im[k] = sample_sd(si, si2, count);
    }
    return out;
}

CorrelationSeries sample_trace(const TrotterPlan &plan, const TimeGrid &grid,
                               const SamplingOptions &options, OpCounts *counts) {
    const int num_spins = plan.num_spins();
    const std::uint64_t dim = plan.hamiltonian().dimension();
    const std::int64_t total =
        options.basis_states ? static_cast<std::int64_t>(dim) : options.samples;
    if (total < 1) throw std::invalid_argument("need at least one sample");
    if (grid.num_points < 1) throw std::invalid_argument("empty time grid");
    if (std::abs(grid.tau - plan.tau()) > 1e-12 * plan.tau()) {
        throw std::invalid_argument("time grid and plan use different tau");
    }
    if (options.method == SeriesMethod::HalfTime && grid.steps_per_interval % 2 != 0) {
        throw std::invalid_argument("half-time series need an even number of steps per interval");
    }

    std::vector<std::vector<Complex>> raw(static_cast<std::size_t>(total));
    std::vector<OpCounts> tallies(static_cast<std::size_t>(total));

    // Validate HalfTime compatibility up front so no worker throws.
    if (options.method == SeriesMethod::HalfTime && !plan.hamiltonian().is_real()) {
        throw IncompatibleMethod("half_time method requires a real Hamiltonian matrix (all h^y = 0); "
                                 "use the direct method");
    }
    if (options.method == SeriesMethod::HalfTime && !options.basis_states &&
        options.kind == RandomStateKind::GaussianComplex) {
        throw IncompatibleMethod("half_time method requires real initial states; "
                                 "gaussian_complex states are complex");
    }

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < total; ++s) {
        const auto idx = static_cast<std::size_t>(s);
        const StateVector phi =
            options.basis_states
                ? basis_state(num_spins, static_cast<std::uint64_t>(s))
                : random_state(num_spins, options.kind,
                               sample_seed(options.seed, static_cast<std::uint64_t>(s)));
        raw[idx] = correlation_sample(plan, phi, grid, options.method, &tallies[idx]);
    }
    if (counts != nullptr) {
        for (const auto &t : tallies) *counts += t;
    }
    if (options.basis_states) {
        // One exact evaluation: sum_n <n|U|n> / D, so that trace_estimate's
        // factor D turns it back into the plain sum.
        std::vector<Complex> sum(raw.front().size());
        for (const auto &row : raw) {
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += row[k];
        }
        for (auto &v : sum) v /= static_cast<double>(dim);
        return trace_estimate(std::span(&sum, 1), dim, grid.delta_t());
    }
    return trace_estimate(raw, dim, grid.delta_t());
}

double window_weight(WindowKind w, int k, int num_points) noexcept {
    const double x = static_cast<double>(k) / num_points;
    if (w == WindowKind::Gaussian) return std::exp(-0.5 * 9.0 * x * x);
    return 0.5 * (1.0 + std::cos(std::numbers::pi * x));
}

double DosEstimate::integral() const noexcept {
    double s = 0.0;
    for (double v : density) s += v;
    return s * grid_spacing;
}

DosEstimate clip_dos(const DosEstimate &dos, double lo, double hi) {
    const auto first = std::lower_bound(dos.energies.begin(), dos.energies.end(), lo);
    const auto last = std::upper_bound(first, dos.energies.end(), hi);
    if (first == last) throw std::invalid_argument("clip_dos: no grid point in [lo, hi]");
    const auto b = first - dos.energies.begin();
    const auto e = last - dos.energies.begin();
    DosEstimate out = dos;
    out.energies.assign(dos.energies.begin() + b, dos.energies.begin() + e);
    out.density.assign(dos.density.begin() + b, dos.density.begin() + e);
    out.sd.assign(dos.sd.begin() + b, dos.sd.begin() + e);
    return out;
}

DosEstimate dos_from_series(std::span<const Complex> series, double delta_t, WindowKind window) {
    const int n = static_cast<int>(series.size());
    if (n < 2) throw std::invalid_argument("DOS needs a series of at least 2 points");
    if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be positive");
    const std::size_t m = 4 * (2 * static_cast<std::size_t>(n) - 1);

    // eps_j t_k = 2 pi (j - m/2) k / m, so e^{i eps_j t_k} = e^{2 pi i jk/m} (-1)^k.
    std::vector<Complex> buf(m, Complex{});
    buf[0] = window_weight(window, 0, n) * series[0];
    for (int k = 1; k < n; ++k) {
        const double w = window_weight(window, k, n) * ((k % 2 == 0) ? 1.0 : -1.0);
        buf[static_cast<std::size_t>(k)] = w * series[static_cast<std::size_t>(k)];
        buf[m - static_cast<std::size_t>(k)] = w * std::conj(series[static_cast<std::size_t>(k)]);
    }
    inverse_dft(buf);

    DosEstimate out;
    out.window = window;
    out.grid_spacing = 2.0 * std::numbers::pi / (static_cast<double>(m) * delta_t);
    out.resolution = std::numbers::pi / (n * delta_t);
    out.energies.resize(m);
    out.density.resize(m);
    out.sd.assign(m, std::numeric_limits<double>::quiet_NaN());
    const double scale = delta_t / (2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < m; ++j) {
        out.energies[j] = (static_cast<double>(j) - static_cast<double>(m / 2)) * out.grid_spacing;
        out.density[j] = scale * buf[j].real();
        out.max_imag = std::max(out.max_imag, scale * std::abs(buf[j].imag()));
    }
    return out;
}

std::vector<DosEstimate> per_sample_dos(const CorrelationSeries &series, WindowKind window) {
    std::vector<DosEstimate> out;
    out.reserve(series.samples.size());
    for (const auto &s : series.samples) out.push_back(dos_from_series(s, series.delta_t, window));
    return out;
}

DosEstimate dos_from_series(const CorrelationSeries &series, WindowKind window) {
    DosEstimate out = dos_from_series(series.mean, series.delta_t, window);
    out.sample_count = series.sample_count();
    if (series.sample_count() < 2) return out;
    const auto per = per_sample_dos(series, window);
    for (std::size_t j = 0; j < out.density.size(); ++j) {
        double s = 0.0, s2 = 0.0;
        for (const auto &d : per) {
            s += d.density[j];
            s2 += d.density[j] * d.density[j];
        }
        out.sd[j] = sample_sd(s, s2, static_cast<int>(per.size()));
    }
    return out;
}

void write_series_csv(std::ostream &out, const CorrelationSeries &series, std::string_view comment) {
    detail::put_comment(out, comment);
    out << "t,re_c,im_c,sd_re,sd_im\n";
    for (int k = 0; k < series.num_points(); ++k) {
        const auto i = static_cast<std::size_t>(k);
        detail::put_number(out, series.time(k));
        out << ',';
        detail::put_number(out, series.mean[i].real());
        out << ',';
        detail::put_number(out, series.mean[i].imag());
        out << ',';
        detail::put_number(out, series.sd_re[i]);
        out << ',';
        detail::put_number(out, series.sd_im[i]);
        out << '\n';
    }
}

void write_sample_series_csv(std::ostream &out, const CorrelationSeries &series,
                             std::string_view comment) {
    detail::put_comment(out, comment);
    out << "sample,t,re_c,im_c\n";
    for (std::size_t s = 0; s < series.samples.size(); ++s) {
        for (int k = 0; k < series.num_points(); ++k) {
            const auto &c = series.samples[s][static_cast<std::size_t>(k)];
            out << s << ',';
            detail::put_number(out, series.time(k));
            out << ',';
            detail::put_number(out, c.real());
            out << ',';
            detail::put_number(out, c.imag());
            out << '\n';
        }
    }
}

void write_dos_csv(std::ostream &out, const DosEstimate &dos, std::string_view comment) {
    detail::put_comment(out, comment);
    out << "epsilon,dos_mean,dos_sd\n";
    for (std::size_t j = 0; j < dos.energies.size(); ++j) {
        detail::put_number(out, dos.energies[j]);
        out << ',';
        detail::put_number(out, dos.density[j]);
        out << ',';
        detail::put_number(out, dos.sd[j]);
        out << '\n';
    }
}

} // namespace qdos
