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

#include "qdos/evolve.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace qdos {

namespace {

// Below this many amplitudes threading costs more than it saves.
constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;

// Low qubits are processed inside cache-resident blocks of this many bits.
constexpr int kBlockBits = 12;

inline Complex cmul(const Complex &a, const Complex &b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline void rotate_pair(Complex &a, Complex &b, const Gate2 &g) noexcept {
    const Complex a0 = a;
    const Complex b0 = b;
    const Complex na = cmul(g.m00, a0) + cmul(g.m01, b0);
    const Complex nb = cmul(g.m10, a0) + cmul(g.m11, b0);
    a = na;
    b = nb;
}

// Applies `g` to qubit q for all pairs inside [begin, begin + len).
inline void rotate_qubit_range(Complex *amps, std::uint64_t begin, std::uint64_t len, int q,
                               const Gate2 &g) noexcept {
    const std::uint64_t stride = std::uint64_t{1} << q;
    for (std::uint64_t base = begin; base < begin + len; base += 2 * stride) {
        for (std::uint64_t k = 0; k < stride; ++k) {
            rotate_pair(amps[base + k], amps[base + k + stride], g);
        }
    }
}

// Rotation layers are buffered so that back-to-back layers collapse into one.
class FactorRunner {
  public:
    FactorRunner(StateVector &state, OpCounts *counts) : state_(state), counts_(counts) {}
    ~FactorRunner() = default;

    void rotate(const Gate2 &g) {
        pending_ = g * pending_;
        has_pending_ = true;
    }

    void diagonal(const DiagonalPhase &d) {
        flush();
        apply_diagonal_phase(state_, d, counts_);
    }

    // Rotated factor R D R^dagger, given as the exact pair (R^dagger/sqrt2,
    // sqrt2 R); the scalings cancel across the factor.
    void rotated(const DiagonalPhase &d, const Gate2 &r_dagger_down, const Gate2 &r_up) {
        rotate(r_dagger_down);
        flush();
        OpCounts local;
        apply_diagonal_phase(state_, d, &local);
        rotate(r_up);
        if (counts_ != nullptr) {
            counts_->rotated_factors += 1;
            counts_->logical_gates += local.logical_gates + 2;
            counts_->amplitude_updates += local.amplitude_updates;
            counts_->bond_term_evaluations += local.bond_term_evaluations;
        }
    }

    void flush() {
        if (has_pending_ && !pending_.is_identity()) {
            apply_single_qubit_layer(state_, pending_, counts_);
        }
        pending_ = Gate2{};
        has_pending_ = false;
    }

  private:
    StateVector &state_;
    OpCounts *counts_;
    Gate2 pending_{};
    bool has_pending_ = false;
};

// The step applies sqrt2 R and R^dagger/sqrt2 instead of R and R^dagger.
// Their entries (0, +-1, +-i, +-1/2, +-i/2) and all their products are exact
// in binary floating point, whereas 2 fl(1/sqrt2)^2 = 1 + 1.3e-16 would
// inflate the norm by the same amount on every layer.
const Complex kI{0.0, 1.0};
const Gate2 kRotXUp{1.0, kI, kI, 1.0};
const Gate2 kRotXDown{0.5, -0.5 * kI, -0.5 * kI, 0.5};
const Gate2 kRotYUp{1.0, 1.0, -1.0, 1.0};
const Gate2 kRotYDown{0.5, -0.5, 0.5, 0.5};

// Everything of one step except the leading and trailing z half-steps.
void run_core(FactorRunner &run, const TrotterPlan &plan) {
    if (plan.y_half()) run.rotated(*plan.y_half(), kRotXDown, kRotXUp);
    if (plan.x_full()) run.rotated(*plan.x_full(), kRotYDown, kRotYUp);
    if (plan.y_half()) run.rotated(*plan.y_half(), kRotXDown, kRotXUp);
}

} // namespace

// ---------------------------------------------------------------- Gate2

Gate2 Gate2::adjoint() const noexcept {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
}

bool Gate2::is_identity(double tol) const noexcept {
    return std::abs(m00 - 1.0) <= tol && std::abs(m11 - 1.0) <= tol && std::abs(m01) <= tol &&
           std::abs(m10) <= tol;
}

Gate2 operator*(const Gate2 &a, const Gate2 &b) noexcept {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Gate2 AxisRotation::matrix() const noexcept {
    const double r = std::numbers::sqrt2 / 2.0;
    Gate2 g;
    if (axis == RotationAxis::x) {
        g = {{r, 0.0}, {0.0, r}, {0.0, r}, {r, 0.0}};
    } else {
        g = {{r, 0.0}, {r, 0.0}, {-r, 0.0}, {r, 0.0}};
    }
    return direction == RotationDirection::forward ? g : g.adjoint();
}

// ---------------------------------------------------------------- OpCounts

OpCounts &OpCounts::operator+=(const OpCounts &o) noexcept {
    steps += o.steps;
    diagonal_factors += o.diagonal_factors;
    rotated_factors += o.rotated_factors;
    logical_gates += o.logical_gates;
    rotation_layers += o.rotation_layers;
    amplitude_updates += o.amplitude_updates;
    bond_term_evaluations += o.bond_term_evaluations;
    return *this;
}

std::string to_json(const OpCounts &c) {
    nlohmann::ordered_json j;
    j["steps"] = c.steps;
    j["logical"] = {{"diagonal_factors", c.diagonal_factors},
                    {"rotated_factors", c.rotated_factors},
                    {"gates", c.logical_gates}};
    j["classical"] = {{"rotation_layers", c.rotation_layers},
                      {"amplitude_updates", c.amplitude_updates},
                      {"bond_term_evaluations", c.bond_term_evaluations}};
    return j.dump(2);
}

// ---------------------------------------------------------------- DiagonalPhase

DiagonalPhase::DiagonalPhase(const SpinHamiltonian &h, Axis axis, double dt)
    : axis_(axis), dt_(dt), num_spins_(h.num_spins()) {
    // coupling value -> (offset -> mask)
    std::map<double, std::map<int, std::uint64_t>> pair_groups;
    for (const auto &b : h.bonds()) {
        const double j = component(b.coupling, axis);
        if (j == 0.0) continue;
        pair_groups[j][b.j - b.i] |= std::uint64_t{1} << b.i;
        ++num_pair_terms_;
    }
    for (const auto &[j, shifts] : pair_groups) {
        PairClass cls;
        int count = 0;
        for (const auto &[offset, mask] : shifts) {
            cls.shifts.push_back({offset, mask});
            count += std::popcount(mask);
        }
        // c anti-aligned pairs: sum J s_i s_j = (J/4) (count - 2c).
        for (int c = 0; c <= count; ++c) {
            cls.table.push_back(std::polar(1.0, dt * 0.25 * j * (count - 2 * c)));
        }
        pairs_.push_back(std::move(cls));
    }

    std::map<double, std::uint64_t> field_groups;
    for (int s = 0; s < h.num_spins(); ++s) {
        const double f = component(h.fields()[static_cast<std::size_t>(s)], axis);
        if (f != 0.0) field_groups[f] |= std::uint64_t{1} << s;
    }
    for (const auto &[f, mask] : field_groups) {
        FieldClass cls{mask, {}};
        const int count = std::popcount(mask);
        // u up spins: sum h s_i = (h/2) (2u - count).
        for (int u = 0; u <= count; ++u) {
            cls.table.push_back(std::polar(1.0, dt * 0.5 * f * (2 * u - count)));
        }
        fields_.push_back(std::move(cls));
    }
}

Complex DiagonalPhase::phase(std::uint64_t n) const noexcept {
    Complex p{1.0, 0.0};
    for (const auto &cls : pairs_) {
        int c = 0;
        for (const auto &s : cls.shifts) c += std::popcount((n ^ (n >> s.offset)) & s.mask);
        p = cmul(p, cls.table[static_cast<std::size_t>(c)]);
    }
    for (const auto &cls : fields_) {
        p = cmul(p, cls.table[static_cast<std::size_t>(std::popcount(n & cls.mask))]);
    }
    return p;
}

void DiagonalPhase::apply(std::span<Complex> amplitudes) const {
    if (amplitudes.size() != (std::size_t{1} << num_spins_)) {
        throw std::invalid_argument("diagonal phase built for a different register size");
    }
    if (is_identity()) return;
    const auto dim = static_cast<std::int64_t>(amplitudes.size());
    Complex *amps = amplitudes.data();

    if (pairs_.size() == 1 && fields_.empty()) {
        // Uniform-coupling models (the Heisenberg benchmarks) take this path.
        const auto &cls = pairs_.front();
        const Shift *shifts = cls.shifts.data();
        const auto num_shifts = cls.shifts.size();
        const Complex *table = cls.table.data();
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
        for (std::int64_t i = 0; i < dim; ++i) {
            const auto n = static_cast<std::uint64_t>(i);
            int c = 0;
            for (std::size_t k = 0; k < num_shifts; ++k) {
                c += std::popcount((n ^ (n >> shifts[k].offset)) & shifts[k].mask);
            }
            amps[i] = cmul(amps[i], table[c]);
        }
        return;
    }

#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
    for (std::int64_t i = 0; i < dim; ++i) {
        amps[i] = cmul(amps[i], phase(static_cast<std::uint64_t>(i)));
    }
}

// ---------------------------------------------------------------- TrotterPlan

TrotterPlan::TrotterPlan(SpinHamiltonian h, double tau) : hamiltonian_(std::move(h)), tau_(tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("time step tau must be positive and finite");
    }
    if (hamiltonian_.has_axis(Axis::z)) {
        z_half_.emplace(hamiltonian_, Axis::z, 0.5 * tau);
        z_full_.emplace(hamiltonian_, Axis::z, tau);
    }
    if (hamiltonian_.has_axis(Axis::y)) y_half_.emplace(hamiltonian_, Axis::y, 0.5 * tau);
    if (hamiltonian_.has_axis(Axis::x)) x_full_.emplace(hamiltonian_, Axis::x, tau);
}

// ---------------------------------------------------------------- kernels

void apply_diagonal_phase(StateVector &state, const DiagonalPhase &phase, OpCounts *counts) {
    phase.apply(state.amplitudes());
    if (counts != nullptr) {
        counts->diagonal_factors += 1;
        counts->logical_gates += phase.num_pair_terms();
        counts->amplitude_updates += state.dimension();
        counts->bond_term_evaluations += phase.num_pair_terms() * state.dimension();
    }
}

void apply_single_qubit_layer(StateVector &state, const Gate2 &gate, OpCounts *counts) {
    const int num_qubits = state.num_spins();
    const auto dim = static_cast<std::int64_t>(state.dimension());
    Complex *amps = state.amplitudes().data();

    const int low = std::min(num_qubits, kBlockBits);
    const std::int64_t block = std::int64_t{1} << low;
    const std::int64_t num_blocks = dim / block;
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
    for (std::int64_t b = 0; b < num_blocks; ++b) {
        for (int q = 0; q < low; ++q) {
            rotate_qubit_range(amps, static_cast<std::uint64_t>(b * block),
                               static_cast<std::uint64_t>(block), q, gate);
        }
    }

    // High qubits: enumerate pair index p and insert a zero at bit q, so each
    // (n, n ^ 2^q) pair belongs to exactly one iteration.
    for (int q = low; q < num_qubits; ++q) {
        const std::uint64_t stride = std::uint64_t{1} << q;
        const std::int64_t half = dim / 2;
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
        for (std::int64_t p = 0; p < half; ++p) {
            const auto up = static_cast<std::uint64_t>(p);
            const std::uint64_t i0 = ((up >> q) << (q + 1)) | (up & (stride - 1));
            rotate_pair(amps[i0], amps[i0 + stride], gate);
        }
    }

    if (counts != nullptr) {
        counts->rotation_layers += 1;
        counts->amplitude_updates += static_cast<std::uint64_t>(num_qubits) * state.dimension();
    }
}

void apply_axis_rotation(StateVector &state, AxisRotation rot, OpCounts *counts) {
    apply_single_qubit_layer(state, rot.matrix(), counts);
}

void trotter_step(StateVector &state, const TrotterPlan &plan, OpCounts *counts) {
    if (state.num_spins() != plan.num_spins()) {
        throw std::invalid_argument("plan and state have different numbers of spins");
    }
    FactorRunner run(state, counts);
    if (plan.z_half()) run.diagonal(*plan.z_half());
    run_core(run, plan);
    if (plan.z_half()) run.diagonal(*plan.z_half());
    run.flush();
    if (counts != nullptr) counts->steps += 1;
}

void evolve(StateVector &state, const TrotterPlan &plan, std::int64_t steps, OpCounts *counts) {
    if (steps < 0) {
        throw std::invalid_argument("evolve needs a nonnegative step count");
    }
    if (state.num_spins() != plan.num_spins()) {
        throw std::invalid_argument("plan and state have different numbers of spins");
    }
    if (steps == 0) return;
    FactorRunner run(state, counts);
    if (plan.z_half()) run.diagonal(*plan.z_half());
    for (std::int64_t k = 0; k < steps; ++k) {
        run_core(run, plan);
        if (plan.z_half()) run.diagonal(k + 1 < steps ? *plan.z_full() : *plan.z_half());
    }
    run.flush();
    if (counts != nullptr) counts->steps += static_cast<std::uint64_t>(steps);
}

} // namespace qdos
