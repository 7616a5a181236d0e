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

#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "qdos/evolve.hpp"
#include "qdos/model.hpp"
#include "qdos/oracle.hpp"
#include "reference.hpp"

namespace qdos {
namespace {

using testing::Mat;
using testing::expm_i;
using testing::kron_hamiltonian;
using testing::max_abs;

/// Matrix of a linear map on states, column by column from basis states.
Mat operator_matrix(int num_spins, const std::function<void(StateVector &)> &op) {
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << num_spins);
    Mat m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        auto s = basis_state(num_spins, static_cast<std::uint64_t>(c));
        op(s);
        m.col(c) = testing::to_eigen(s);
    }
    return m;
}

Mat gate_matrix(const Gate2 &g) {
    Mat m(2, 2);
    m << g.m00, g.m01, g.m10, g.m11;
    return m;
}

TEST(DiagonalPhase, IsingPairExample) {
    const double tau = 0.37;
    const DiagonalPhase p(SpinHamiltonian(2, {{0, 1, {0, 0, -1}}}), Axis::z, tau);
    EXPECT_NEAR(std::abs(p.phase(0) - std::polar(1.0, -tau / 4)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.phase(1) - std::polar(1.0, tau / 4)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.phase(3) - std::polar(1.0, -tau / 4)), 0.0, 1e-15);
}

TEST(DiagonalPhase, FieldOnlyExample) {
    const double tau = 0.8;
    const DiagonalPhase p(SpinHamiltonian(1, {}, {{0, 0, 1}}), Axis::z, tau);
    EXPECT_NEAR(std::abs(p.phase(1) - std::polar(1.0, tau / 2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.phase(0) - std::polar(1.0, -tau / 2)), 0.0, 1e-15);
}

TEST(DiagonalPhase, MatchesDenseZExponential) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int l = 1 + trial % 7;
        const auto h = testing::random_hamiltonian(rng, l, trial % 3 != 0);
        const Mat hz = kron_hamiltonian(h, {Axis::z});
        const double dt = 0.05 + 0.1 * (trial % 5);
        const DiagonalPhase p(h, Axis::z, dt);
        for (Eigen::Index n = 0; n < hz.rows(); ++n) {
            const Complex expect = std::polar(1.0, -dt * hz(n, n).real());
            ASSERT_NEAR(std::abs(p.phase(static_cast<std::uint64_t>(n)) - expect), 0.0, 1e-13);
        }
    }
}

TEST(DiagonalPhase, SweepAgreesWithPointwisePhase) {
    const auto h = build_triangular({5, -1.0});
    const DiagonalPhase p(h, Axis::z, 0.1);
    auto s = random_state(h.num_spins(), RandomStateKind::GaussianComplex, 4);
    const auto orig = s;
    apply_diagonal_phase(s, p);
    double worst = 0;
    for (std::uint64_t n = 0; n < s.dimension(); ++n) {
        worst = std::max(worst, std::abs(s[n] - p.phase(n) * orig[n]));
    }
    EXPECT_LT(worst, 1e-15);
    EXPECT_NEAR(s.norm(), 1.0, 1e-13);
}

TEST(DiagonalPhase, ZeroCouplingsAreIdentity) {
    const SpinHamiltonian h(3, {{0, 1, {0, 0, 0}}});
    EXPECT_TRUE(DiagonalPhase(h, Axis::z, 0.5).is_identity());
    const TrotterPlan plan(h, 0.1);
    auto s = random_state(3, RandomStateKind::GaussianComplex, 1);
    const auto orig = s;
    evolve(s, plan, 10);
    EXPECT_EQ(s, orig);
}

TEST(AxisRotation, GatesConjugateSpinAxes) {
    const Mat sz = testing::spin_matrix(Axis::z);
    const Mat x = gate_matrix(AxisRotation{RotationAxis::x, RotationDirection::forward}.matrix());
    const Mat y = gate_matrix(AxisRotation{RotationAxis::y, RotationDirection::forward}.matrix());
    EXPECT_LT(max_abs(x * sz * x.adjoint() - testing::spin_matrix(Axis::y)), 1e-15);
    EXPECT_LT(max_abs(y * sz * y.adjoint() - testing::spin_matrix(Axis::x)), 1e-15);
    EXPECT_LT(max_abs(x * x.adjoint() - Mat::Identity(2, 2)), 1e-15);
}

TEST(AxisRotation, ForwardThenInverseIsIdentity) {
    for (auto axis : {RotationAxis::x, RotationAxis::y}) {
        auto s = random_state(9, RandomStateKind::GaussianComplex, 8);
        const auto orig = s;
        apply_axis_rotation(s, {axis, RotationDirection::forward});
        EXPECT_FALSE(s == orig);
        apply_axis_rotation(s, {axis, RotationDirection::inverse});
        double worst = 0;
        for (std::uint64_t n = 0; n < s.dimension(); ++n) worst = std::max(worst, std::abs(s[n] - orig[n]));
        EXPECT_LT(worst, 1e-12);
    }
}

TEST(AxisRotation, LayerMatchesKroneckerProduct) {
    // 14 spins exercises both the cache-blocked low qubits and the strided
    // high qubits; compare a few amplitudes against the tensor product.
    const Gate2 g = AxisRotation{RotationAxis::y, RotationDirection::forward}.matrix();
    const Mat g1 = gate_matrix(g);
    for (int l : {1, 3, 6}) {
        Mat full = Mat::Identity(1, 1);
        for (int k = 0; k < l; ++k) full = Eigen::kroneckerProduct(full, g1).eval();
        const Mat applied = operator_matrix(l, [&](StateVector &s) { apply_single_qubit_layer(s, g); });
        EXPECT_LT(max_abs(applied - full), 1e-14) << l;
    }
    const int l = 14;
    auto s = basis_state(l, 0b10110011001101);
    apply_single_qubit_layer(s, g);
    for (std::uint64_t n : {0ull, 1ull, 777ull, 16383ull}) {
        Complex expect = 1.0;
        for (int k = 0; k < l; ++k) {
            const int in = (0b10110011001101 >> k) & 1;
            const int out = static_cast<int>((n >> k) & 1);
            expect *= g1(out, in);
        }
        EXPECT_NEAR(std::abs(s[n] - expect), 0.0, 1e-14);
    }
}

// Rotation-conjugated z-form kernel equals the dense per-axis exponential.
TEST(AxisRotation, ConjugationReproducesAxisPropagator) {
    std::mt19937_64 rng(5);
    const double tau = 0.13;
    for (int l = 1; l <= 4; ++l) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto h = testing::random_hamiltonian(rng, l, true);
            const DiagonalPhase py(h, Axis::y, tau / 2);
            const Mat uy = operator_matrix(l, [&](StateVector &s) {
                apply_axis_rotation(s, {RotationAxis::x, RotationDirection::inverse});
                apply_diagonal_phase(s, py);
                apply_axis_rotation(s, {RotationAxis::x, RotationDirection::forward});
            });
            EXPECT_LT(max_abs(uy - expm_i(kron_hamiltonian(h, {Axis::y}), tau / 2)), 1e-12);
            const DiagonalPhase px(h, Axis::x, tau);
            const Mat ux = operator_matrix(l, [&](StateVector &s) {
                apply_axis_rotation(s, {RotationAxis::y, RotationDirection::inverse});
                apply_diagonal_phase(s, px);
                apply_axis_rotation(s, {RotationAxis::y, RotationDirection::forward});
            });
            EXPECT_LT(max_abs(ux - expm_i(kron_hamiltonian(h, {Axis::x}), tau)), 1e-12);
        }
    }
    // The two named single-axis examples.
    const SpinHamiltonian one(1, {}, {{0, 0.7, 0}});
    const DiagonalPhase p1(one, Axis::y, tau);
    const Mat u1 = operator_matrix(1, [&](StateVector &s) {
        apply_axis_rotation(s, {RotationAxis::x, RotationDirection::inverse});
        apply_diagonal_phase(s, p1);
        apply_axis_rotation(s, {RotationAxis::x, RotationDirection::forward});
    });
    EXPECT_LT(max_abs(u1 - expm_i(dense_matrix(one), tau)), 1e-12);
    const SpinHamiltonian two(2, {{0, 1, {0, -1.3, 0}}});
    EXPECT_LT(max_abs(operator_matrix(2, [&](StateVector &s) { trotter_step(s, TrotterPlan(two, tau)); }) -
                      expm_i(dense_matrix(two), tau)),
              1e-12);
}

TEST(TrotterStep, MatchesDenseFiveFactorProduct) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 12; ++trial) {
        const int l = 1 + trial % 5;
        const auto h = testing::random_hamiltonian(rng, l, trial % 2 == 0);
        const double tau = 0.02 + 0.07 * (trial % 4);
        const TrotterPlan plan(h, tau);
        const Mat u = operator_matrix(l, [&](StateVector &s) { trotter_step(s, plan); });
        EXPECT_LT(max_abs(u - testing::dense_trotter_step(h, tau)), 1e-12) << trial;
    }
}

TEST(TrotterStep, ExactForSingleAxisHamiltonians) {
    std::mt19937_64 rng(17);
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
        const auto full = testing::random_hamiltonian(rng, 4, true);
        std::vector<Bond> bonds;
        for (const auto &b : full.bonds()) {
            Vec3 c{};
            c[static_cast<int>(a)] = component(b.coupling, a);
            bonds.push_back({b.i, b.j, c});
        }
        std::vector<Vec3> fields;
        for (const auto &f : full.fields()) {
            Vec3 c{};
            c[static_cast<int>(a)] = component(f, a);
            fields.push_back(c);
        }
        const SpinHamiltonian h(4, bonds, fields);
        for (double tau : {0.05, 0.5, 2.0}) {
            const Mat u = operator_matrix(4, [&](StateVector &s) { trotter_step(s, TrotterPlan(h, tau)); });
            EXPECT_LT(max_abs(u - expm_propagator(h, tau)), 1e-12);
        }
    }
}

double op_norm(const Mat &m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

TEST(TrotterStep, LocalErrorIsThirdOrder) {
    const auto h = build_triangular({2, -1.0});
    std::vector<double> c;
    for (double tau : {0.1, 0.05, 0.025}) {
        const Mat u = operator_matrix(3, [&](StateVector &s) { trotter_step(s, TrotterPlan(h, tau)); });
        c.push_back(op_norm(u - expm_propagator(h, tau)) / (tau * tau * tau));
    }
    EXPECT_GT(c[0], 1e-6);
    EXPECT_NEAR(c[1] / c[0], 1.0, 0.05);
    EXPECT_NEAR(c[2] / c[1], 1.0, 0.05);
}

TEST(TrotterStep, CountsGatesPerFactor) {
    const auto h = build_triangular({3, -1.0});
    const TrotterPlan plan(h, 0.05);
    OpCounts counts;
    auto s = basis_state(6, 0);
    trotter_step(s, plan, &counts);
    const std::uint64_t p = h.num_bonds();
    EXPECT_EQ(counts.steps, 1u);
    EXPECT_EQ(counts.diagonal_factors, 2u);
    EXPECT_EQ(counts.rotated_factors, 3u);
    EXPECT_EQ(counts.logical_gates, 2 * p + 3 * (p + 2));
    EXPECT_NE(to_json(counts).find("\"gates\""), std::string::npos);
}

TEST(TrotterStep, PreservesNormOverManySteps) {
    const TrotterPlan plan(build_triangular({3, -1.0}), 0.05);
    auto s = random_state(6, RandomStateKind::RandomSign, 2);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
        trotter_step(s, plan);
        worst = std::max(worst, std::abs(s.norm() - 1.0));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Evolve, ZeroStepsIsIdentity) {
    const TrotterPlan plan(build_triangular({3, -1.0}), 0.05);
    auto s = random_state(6, RandomStateKind::GaussianComplex, 2);
    const auto orig = s;
    evolve(s, plan, 0);
    EXPECT_EQ(s, orig);
    EXPECT_THROW(evolve(s, plan, -1), std::invalid_argument);
}

TEST(Evolve, SingleSpinOverlapIsCosine) {
    const SpinHamiltonian h(1, {}, {{0, 0, 1}});
    for (double tau : {0.01, 0.3, 1.7}) {
        const TrotterPlan plan(h, tau);
        StateVector phi(1);
        phi[0] = phi[1] = 1.0 / std::sqrt(2.0);
        auto s = phi;
        for (int m = 1; m <= 20; ++m) {
            evolve(s, plan, 1);
            EXPECT_NEAR(std::abs(inner_product(phi, s) - std::cos(m * tau / 2)), 0.0, 1e-13);
        }
    }
}

TEST(Evolve, FusedScheduleMatchesRepeatedSteps) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        const auto h = trial < 3 ? testing::random_hamiltonian(rng, 6, trial % 2 == 0)
                                 : build_triangular({3 + trial % 2, -1.0});
        const TrotterPlan plan(h, 0.07);
        for (std::int64_t m : {1, 2, 7}) {
            auto a = random_state(h.num_spins(), RandomStateKind::GaussianComplex, 9);
            auto b = a;
            evolve(a, plan, m);
            for (std::int64_t k = 0; k < m; ++k) trotter_step(b, plan);
            double worst = 0;
            for (std::uint64_t n = 0; n < a.dimension(); ++n) worst = std::max(worst, std::abs(a[n] - b[n]));
            EXPECT_LT(worst, 1e-12) << trial << " m=" << m;
        }
    }
}

TEST(Evolve, GlobalErrorIsSecondOrder) {
    const auto h = build_triangular({3, -1.0});
    const auto phi = random_state(6, RandomStateKind::GaussianComplex, 3);
    const Eigen::VectorXcd exact = expm_propagator(h, 1.0) * testing::to_eigen(phi);
    std::vector<double> err;
    for (int m : {10, 20, 40}) {
        auto s = phi;
        evolve(s, TrotterPlan(h, 1.0 / m), m);
        err.push_back((testing::to_eigen(s) - exact).norm());
    }
    for (int k = 0; k < 2; ++k) {
        const double order = std::log2(err[k] / err[k + 1]);
        EXPECT_GE(order, 1.9);
        EXPECT_LE(order, 2.1);
    }
}

TEST(TrotterPlan, RejectsNonPositiveStep) {
    EXPECT_THROW(TrotterPlan(build_chain(3), 0.0), std::invalid_argument);
    EXPECT_THROW(TrotterPlan(build_chain(3), -1.0), std::invalid_argument);
}

} // namespace
} // namespace qdos
