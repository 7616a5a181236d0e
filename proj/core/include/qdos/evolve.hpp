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
 * Symmetrized product-formula propagator
 *
 *   U~(tau) = e^{-i tau Hz/2} e^{-i tau Hy/2} e^{-i tau Hx} e^{-i tau Hy/2} e^{-i tau Hz/2},
 *
 * where H_a collects every term of H along axis a. Each factor is applied
 * as a diagonal phase sweep in the S^z basis; the y and x factors are
 * conjugated into z-form by global pi/2 spin rotations:
 *
 *   e^{-i tau Hy/2} = X e^{-i tau Hz'/2} X^dagger,  X = exp(+i pi S^x / 2)
 *   e^{-i tau Hx}   = Y e^{-i tau Hz''} Y^dagger,   Y = exp(-i pi S^y / 2)
 *
 * with Hz' (Hz'') the z-form Hamiltonian carrying the y (x) couplings.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdos/model.hpp"
#include "qdos/statevec.hpp"

namespace qdos {

/// 2x2 unitary in the (down, up) = (bit 0, bit 1) basis.
struct Gate2 {
    Complex m00{1.0, 0.0};
    Complex m01{0.0, 0.0};
    Complex m10{0.0, 0.0};
    Complex m11{1.0, 0.0};

    [[nodiscard]] Gate2 adjoint() const noexcept;
    [[nodiscard]] bool is_identity(double tol = 1e-15) const noexcept;
    /// Matrix product: (a * b) applies b first.
    friend Gate2 operator*(const Gate2 &a, const Gate2 &b) noexcept;
};

enum class RotationAxis { x, y };
enum class RotationDirection { forward, inverse };

/// pi/2 rotation of every spin. Forward X = exp(+i pi S^x/2) maps S^z to
/// S^y under conjugation; forward Y = exp(-i pi S^y/2) maps S^z to S^x.
struct AxisRotation {
    RotationAxis axis = RotationAxis::x;
    RotationDirection direction = RotationDirection::forward;

    [[nodiscard]] Gate2 matrix() const noexcept;
};

/// Work tallies. "Logical" gates follow the quantum-computer accounting
/// (P_a interaction-controlled phase shifts per diagonal factor, two more
/// for the rotation layers of a rotated factor); the classical counters
/// tally amplitude touches of this simulator.
struct OpCounts {
    std::uint64_t steps = 0;
    std::uint64_t diagonal_factors = 0;
    std::uint64_t rotated_factors = 0;
    std::uint64_t logical_gates = 0;
    std::uint64_t rotation_layers = 0;
    std::uint64_t amplitude_updates = 0;
    std::uint64_t bond_term_evaluations = 0;

    OpCounts &operator+=(const OpCounts &o) noexcept;
};

/// Structured-text (JSON) report of the tallies.
std::string to_json(const OpCounts &counts);

/// Precompiled e^{-i dt H_a} written in z-form, i.e. the multiplier
///
///   a_n <- a_n exp(+i dt (sum_bonds J^a s_i(n) s_j(n) + sum_i h^a s_i(n)))
///
/// with s_i(n) = +-1/2 read from bit i of n. Bonds sharing a coupling value
/// form a class; within a class the phase depends only on the number c of
/// anti-aligned pairs, which is counted with one popcount per distinct site
/// offset. Phases for every c are tabulated up front, so the sweep does no
/// transcendental calls.
class DiagonalPhase {
  public:
    DiagonalPhase(const SpinHamiltonian &h, Axis axis, double dt);

    [[nodiscard]] Axis axis() const noexcept { return axis_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] int num_spins() const noexcept { return num_spins_; }
    /// Number of pair terms with a nonzero coupling on this axis.
    [[nodiscard]] std::size_t num_pair_terms() const noexcept { return num_pair_terms_; }
    [[nodiscard]] bool is_identity() const noexcept { return pairs_.empty() && fields_.empty(); }

    /// Phase multiplier for basis state n.
    [[nodiscard]] Complex phase(std::uint64_t n) const noexcept;

    void apply(std::span<Complex> amplitudes) const;

  private:
    struct Shift {
        int offset;
        std::uint64_t mask; // lower sites i of bonds (i, i + offset)
    };
    struct PairClass {
        std::vector<Shift> shifts;
        std::vector<Complex> table; // indexed by anti-aligned count
    };
    struct FieldClass {
        std::uint64_t mask;
        std::vector<Complex> table; // indexed by up-spin count
    };

    Axis axis_;
    double dt_;
    int num_spins_;
    std::size_t num_pair_terms_ = 0;
    std::vector<PairClass> pairs_;
    std::vector<FieldClass> fields_;
};

class TrotterPlan {
  public:
    TrotterPlan(SpinHamiltonian h, double tau);

    [[nodiscard]] const SpinHamiltonian &hamiltonian() const noexcept { return hamiltonian_; }
    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] int num_spins() const noexcept { return hamiltonian_.num_spins(); }

    /// Factors for axes with no terms are absent and skipped.
    [[nodiscard]] const std::optional<DiagonalPhase> &z_half() const noexcept { return z_half_; }
    [[nodiscard]] const std::optional<DiagonalPhase> &z_full() const noexcept { return z_full_; }
    [[nodiscard]] const std::optional<DiagonalPhase> &y_half() const noexcept { return y_half_; }
    [[nodiscard]] const std::optional<DiagonalPhase> &x_full() const noexcept { return x_full_; }

  private:
    SpinHamiltonian hamiltonian_;
    double tau_;
    std::optional<DiagonalPhase> z_half_;
    std::optional<DiagonalPhase> z_full_;
    std::optional<DiagonalPhase> y_half_;
    std::optional<DiagonalPhase> x_full_;
};

void apply_diagonal_phase(StateVector &state, const DiagonalPhase &phase,
                          OpCounts *counts = nullptr);

/// Applies the same 2x2 unitary to every qubit.
void apply_single_qubit_layer(StateVector &state, const Gate2 &gate, OpCounts *counts = nullptr);

void apply_axis_rotation(StateVector &state, AxisRotation rot, OpCounts *counts = nullptr);

/// One application of U~(tau).
void trotter_step(StateVector &state, const TrotterPlan &plan, OpCounts *counts = nullptr);

/// U~(tau)^steps. Adjacent half-step z factors of consecutive steps are
/// merged and back-to-back rotation layers fused, so the result equals
/// `steps` calls of trotter_step up to rounding.
void evolve(StateVector &state, const TrotterPlan &plan, std::int64_t steps,
            OpCounts *counts = nullptr);

} // namespace qdos
