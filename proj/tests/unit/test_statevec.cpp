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
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "qdos/error.hpp"
#include "qdos/model.hpp"
#include "qdos/oracle.hpp"
#include "qdos/statevec.hpp"
#include "reference.hpp"

namespace qdos {
namespace {

TEST(BasisState, Examples) {
    const auto a = basis_state(1, 0);
    EXPECT_EQ(a[0], Complex(1.0));
    EXPECT_EQ(a[1], Complex(0.0));
    const auto b = basis_state(2, 3);
    for (std::uint64_t n = 0; n < 4; ++n) EXPECT_EQ(b[n], Complex(n == 3 ? 1.0 : 0.0));
    for (std::uint64_t n = 0; n < 8; ++n) EXPECT_DOUBLE_EQ(basis_state(3, n).norm(), 1.0);
    EXPECT_THROW(basis_state(2, 4), std::out_of_range);
}

TEST(RandomState, RandomSignHasFlatMagnitudes) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = random_state(3, RandomStateKind::RandomSign, seed);
        EXPECT_TRUE(s.is_real());
        for (std::uint64_t n = 0; n < 8; ++n) EXPECT_NEAR(std::abs(s[n]), 1.0 / std::sqrt(8.0), 1e-15);
    }
}

TEST(RandomState, DeterministicInKindAndSeed) {
    for (auto kind : {RandomStateKind::RandomSign, RandomStateKind::GaussianComplex}) {
        EXPECT_EQ(random_state(10, kind, 42), random_state(10, kind, 42));
        EXPECT_FALSE(random_state(10, kind, 42) == random_state(10, kind, 43));
    }
}

TEST(RandomState, GaussianIsNormalizedAndComplex) {
    const auto s = random_state(8, RandomStateKind::GaussianComplex, 5);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_FALSE(s.is_real());
    EXPECT_NEAR(random_state(9, RandomStateKind::RandomSign, 5).norm(), 1.0, 1e-12);
}

// E[D a_n^* a_m] = delta_nm, checked to 5 standard errors.
TEST(RandomState, SecondMomentIdentity) {
    constexpr int kTrials = 10000;
    for (auto kind : {RandomStateKind::RandomSign, RandomStateKind::GaussianComplex}) {
        for (auto [n, m] : {std::pair{0, 1}, std::pair{2, 3}, std::pair{0, 0}, std::pair{3, 3}}) {
            double sum_re = 0, sum_im = 0, sq = 0;
            for (int s = 0; s < kTrials; ++s) {
                const auto st = random_state(2, kind, sample_seed(99, static_cast<std::uint64_t>(s)));
                const Complex v = 4.0 * std::conj(st[static_cast<std::uint64_t>(n)]) *
                                  st[static_cast<std::uint64_t>(m)];
                sum_re += v.real();
                sum_im += v.imag();
                sq += std::norm(v);
            }
            const double mean_re = sum_re / kTrials;
            const double mean_im = sum_im / kTrials;
            const double var = sq / kTrials - mean_re * mean_re - mean_im * mean_im;
            const double se = std::sqrt(std::max(var, 1e-30) / kTrials);
            const double expect = (n == m) ? 1.0 : 0.0;
            EXPECT_LE(std::abs(Complex(mean_re - expect, mean_im)), 5.0 * se + 1e-12)
                << to_string(kind) << " " << n << "," << m;
        }
    }
}

TEST(RandomState, UnbiasedTraceEstimate) {
    const auto h = build_triangular({2, -1.0});
    constexpr int kTrials = 10000;
    for (double t : {0.3, 1.0, 2.5}) {
        const Eigen::MatrixXcd u = expm_propagator(h, t);
        const Complex exact = u.trace();
        Complex sum = 0;
        double sq = 0;
        for (int s = 0; s < kTrials; ++s) {
            const auto phi = testing::to_eigen(
                random_state(3, RandomStateKind::RandomSign, sample_seed(7, static_cast<std::uint64_t>(s))));
            const Complex v = 8.0 * phi.dot(u * phi);
            sum += v;
            sq += std::norm(v);
        }
        const Complex mean = sum / double(kTrials);
        const double se = std::sqrt((sq / kTrials - std::norm(mean)) / kTrials);
        EXPECT_LE(std::abs(mean - exact), 5.0 * se) << t;
    }
}

TEST(SampleSeed, DistinctPerIndex) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(sample_seed(1, s));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(sample_seed(1, 5), sample_seed(1, 5));
}

TEST(InnerProduct, Examples) {
    const auto phi = random_state(5, RandomStateKind::GaussianComplex, 1);
    EXPECT_NEAR(std::abs(inner_product(phi, phi) - 1.0), 0.0, 1e-12);
    EXPECT_EQ(inner_product(basis_state(2, 0), basis_state(2, 1)), Complex(0.0));
    EXPECT_THROW(inner_product(basis_state(2, 0), basis_state(3, 0)), DimensionMismatch);
}

TEST(StateVector, NormalizeRejectsZero) {
    StateVector s(2);
    EXPECT_ANY_THROW(s.normalize());
}

TEST(Amplitudes, BinaryRoundTrip) {
    const auto s = random_state(6, RandomStateKind::GaussianComplex, 3);
    std::stringstream buf;
    write_amplitudes(s, buf);
    const std::string bytes = buf.str();
    ASSERT_EQ(bytes.size(), 16u + 64u * 16u);
    EXPECT_EQ(bytes.substr(0, 4), "SVEC");
    EXPECT_EQ(read_amplitudes(buf), s);
    std::stringstream bad("XXXX0000000000000000");
    EXPECT_THROW(read_amplitudes(bad), FormatError);
}

} // namespace
} // namespace qdos
