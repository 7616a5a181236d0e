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
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "qdos/error.hpp"
#include "qdos/fixtures.hpp"
#include "qdos/model.hpp"
#include "qdos/oracle.hpp"
#include "reference.hpp"

#ifndef QDOS_FIXTURES_DIR
#error "QDOS_FIXTURES_DIR must point at tests/fixtures"
#endif

namespace qdos {
namespace {

TEST(ExactSpectrum, HeisenbergPair) {
    const auto s = exact_spectrum(SpinHamiltonian(2, {{0, 1, {-1, -1, -1}}}));
    ASSERT_EQ(s.eigenvalues.size(), 4u);
    EXPECT_NEAR(s.eigenvalues[0], -0.75, 1e-14);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(k)], 0.25, 1e-14);
}

TEST(ExactSpectrum, TriangleHasTwoQuartets) {
    const auto s = exact_spectrum(build_triangular({2, -1.0}));
    ASSERT_EQ(s.eigenvalues.size(), 8u);
    for (int k = 0; k < 8; ++k) {
        EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(k)], k < 4 ? -0.75 : 0.75, 1e-14);
    }
    // Symmetric about zero.
    for (int k = 0; k < 8; ++k) {
        EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(k)], -s.eigenvalues[static_cast<std::size_t>(7 - k)], 1e-14);
    }
}

TEST(ExactSpectrum, TraceIdentityAndOrdering) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const bool fields = trial % 2 == 0;
        const auto h = testing::random_hamiltonian(rng, 2 + trial % 5, fields);
        const auto s = exact_spectrum(h);
        ASSERT_EQ(s.eigenvalues.size(), h.dimension());
        EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
        double sum = 0;
        for (double e : s.eigenvalues) sum += e;
        EXPECT_NEAR(sum, dense_matrix(h).trace().real(), 1e-10);
        EXPECT_NEAR(sum, 0.0, 1e-10); // spin operators are traceless
    }
}

TEST(ExactSpectrum, EnforcesCap) {
    EXPECT_THROW(exact_spectrum(build_chain(6), false, 5), SizeError);
    EXPECT_THROW(expm_propagator(build_chain(6), 1.0, 5), SizeError);
}

TEST(ExactSpectrum, EigenvectorsDiagonalize) {
    const auto h = build_triangular({3, -1.0});
    const auto s = exact_spectrum(h, true);
    ASSERT_TRUE(s.eigenvectors.has_value());
    const auto &v = *s.eigenvectors;
    const Eigen::MatrixXcd d = v.adjoint() * dense_matrix(h) * v;
    for (Eigen::Index k = 0; k < d.rows(); ++k) {
        EXPECT_NEAR(d(k, k).real(), s.eigenvalues[static_cast<std::size_t>(k)], 1e-12);
    }
}

TEST(Propagator, SpectralAndScalingSquaringAgree) {
    std::mt19937_64 rng(9);
    for (int l = 1; l <= 4; ++l) {
        const auto h = testing::random_hamiltonian(rng, l, true);
        const auto s = exact_spectrum(h, true);
        for (double t : {0.1, 1.0, 3.0}) {
            EXPECT_LT(testing::max_abs(spectral_propagator(s, t) - expm_propagator(h, t)), 1e-12);
        }
    }
    EXPECT_THROW(spectral_propagator(exact_spectrum(build_chain(2)), 1.0), std::invalid_argument);
}

TEST(ExactTraceSeries, Examples) {
    const auto two = exact_trace_series(exact_spectrum(SpinHamiltonian(1, {}, {{0, 0, 1}})), 20, 0.3);
    const auto tri = exact_trace_series(exact_spectrum(build_triangular({2, -1.0})), 20, 0.3);
    EXPECT_NEAR(two.mean[0].real(), 2.0, 1e-14);
    EXPECT_NEAR(tri.mean[0].real(), 8.0, 1e-14);
    for (int k = 0; k < 20; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        EXPECT_NEAR(std::abs(two.mean[kk] - 2.0 * std::cos(0.15 * k)), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(tri.mean[kk] - 8.0 * std::cos(0.75 * 0.3 * k)), 0.0, 1e-13);
    }
    EXPECT_EQ(tri.sample_count(), 1);
    EXPECT_TRUE(std::isnan(tri.sd_re[1]));
}

TEST(ExactThermo, TwoLevelAnalytic) {
    const auto s = exact_spectrum(SpinHamiltonian(1, {}, {{0, 0, 1}}));
    for (double beta : {0.1, 1.0, 4.0, 40.0}) {
        const auto p = exact_thermo_point(s, beta);
        EXPECT_NEAR(p.log_z, std::log(2 * std::cosh(beta / 2)), 1e-12);
        EXPECT_NEAR(p.energy, -0.5 * std::tanh(beta / 2), 1e-12);
        EXPECT_NEAR(p.heat, (beta / 2) * (beta / 2) / std::pow(std::cosh(beta / 2), 2), 1e-12);
    }
}

TEST(ExactThermo, TriangleGroundMultiplet) {
    const auto s = exact_spectrum(build_triangular({2, -1.0}));
    const std::vector<double> temps{0.01, 1.0};
    const auto c = exact_thermo(s, temps);
    EXPECT_NEAR(c.energy_per_site[0], -0.25, 1e-12);
    EXPECT_NEAR(c.heat[0], 0.0, 1e-12);
    EXPECT_EQ(c.num_sites, 3);
}

TEST(Fixtures, RoundTripAndCompare) {
    const auto h = build_triangular({3, -1.0});
    const auto temps = default_temperatures();
    const auto f = make_fixture(exact_spectrum(h), temps, "tri6");
    EXPECT_EQ(f.eigenvalues.size(), 64u);
    EXPECT_FALSE(f.eigenvalues_truncated);
    const auto path = std::filesystem::temp_directory_path() / "qdos_fixture_roundtrip.json";
    write_fixtures(path, {{instance_hash(h), f}});
    const auto back = read_fixtures(path);
    std::filesystem::remove(path);
    ASSERT_EQ(back.count(instance_hash(h)), 1u);
    EXPECT_EQ(compare_fixture(f, back.at(instance_hash(h))), "");
    auto off = f;
    off.ground_energy += 1e-6;
    EXPECT_NE(compare_fixture(f, off), "");
}

TEST(Fixtures, LargeInstancesAreTruncated) {
    const auto f = make_fixture(exact_spectrum(build_triangular({4, -1.0})), std::vector<double>{1.0});
    EXPECT_TRUE(f.eigenvalues_truncated);
    EXPECT_EQ(f.eigenvalues.size(), 20u);
    EXPECT_NEAR(f.eigenvalue_sum, 0.0, 1e-9);
}

TEST(Fixtures, InstanceHashDistinguishesHamiltonians) {
    EXPECT_EQ(instance_hash(build_triangular({3, -1.0})), instance_hash(build_triangular({3, -1.0})));
    EXPECT_NE(instance_hash(build_triangular({3, -1.0})), instance_hash(build_triangular({3, 1.0})));
}

TEST(Fixtures, ReadRejectsMalformedFiles) {
    const auto path = std::filesystem::temp_directory_path() / "qdos_fixture_bad.json";
    {
        std::ofstream(path) << R"({"format": "other"})";
    }
    EXPECT_THROW(read_fixtures(path), FormatError);
    std::filesystem::remove(path);
    EXPECT_THROW(read_fixtures(path), FormatError);
}

// Recorded by `qdos oracle`; recomputing must reproduce every stored value.
TEST(Fixtures, RecordedInstancesReproduce) {
    const auto set = read_fixtures(std::filesystem::path(QDOS_FIXTURES_DIR) / "oracle_fixtures.json");
    ASSERT_GE(set.size(), 2u);
    for (int rows : {2, 3, 4}) {
        const auto h = build_triangular({rows, -1.0});
        const auto it = set.find(instance_hash(h));
        ASSERT_NE(it, set.end()) << rows;
        const auto &want = it->second;
        const auto got = make_fixture(exact_spectrum(h), want.temperatures, want.label);
        EXPECT_EQ(compare_fixture(want, got, 1e-9), "") << rows;
    }
    const auto tri6 = set.at(instance_hash(build_triangular({3, -1.0})));
    EXPECT_NEAR(tri6.ground_energy, -2.25, 1e-12);
}

} // namespace
} // namespace qdos
