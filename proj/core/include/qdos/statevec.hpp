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
 * Dense state vectors of L spins and the random states used for
 * stochastic trace estimation.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace qdos {

using Complex = std::complex<double>;

class StateVector {
  public:
    /// All-zero register of 2^num_spins amplitudes.
    explicit StateVector(int num_spins);

    [[nodiscard]] int num_spins() const noexcept { return num_spins_; }
    [[nodiscard]] std::uint64_t dimension() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

    Complex &operator[](std::uint64_t n) noexcept { return amplitudes_[n]; }
    const Complex &operator[](std::uint64_t n) const noexcept { return amplitudes_[n]; }

    [[nodiscard]] double norm() const noexcept;
    void normalize();

    [[nodiscard]] bool is_real() const noexcept;

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    int num_spins_;
    std::vector<Complex> amplitudes_;
};

/// Unit-norm random-state ensembles. Both satisfy E[D a_n^* a_m] = delta_nm,
/// which makes D <Phi|M|Phi> an unbiased estimator of Tr M.
enum class RandomStateKind {
    GaussianComplex, ///< i.i.d. standard complex normals, then normalized
    RandomSign,      ///< a_n = +-1/sqrt(D), signs i.i.d. uniform
};

std::string_view to_string(RandomStateKind kind) noexcept;
/// Accepts "random_sign" and "gaussian_complex"; throws FormatError otherwise.
RandomStateKind parse_random_state_kind(std::string_view name);

StateVector basis_state(int num_spins, std::uint64_t index);

/// Deterministic in (kind, seed). Draws come from std::mt19937_64 seeded
/// with `seed`; use sample_seed() to derive one stream per sample.
StateVector random_state(int num_spins, RandomStateKind kind, std::uint64_t seed);

/// SplitMix64 finalizer applied to base_seed + (index + 1) * golden gamma.
/// Gives every sample index its own well-mixed 64-bit stream seed.
std::uint64_t sample_seed(std::uint64_t base_seed, std::uint64_t sample_index) noexcept;

/// sum_n conj(u_n) v_n. Throws DimensionMismatch when sizes differ.
Complex inner_product(const StateVector &u, const StateVector &v);

/// Debug dump: 16-byte header ("SVEC", u32 version, u32 L, u32 reserved),
/// then interleaved little-endian (re, im) doubles.
void write_amplitudes(const StateVector &state, std::ostream &out);
StateVector read_amplitudes(std::istream &in);

} // namespace qdos
