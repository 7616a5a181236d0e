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

#include "qdos/statevec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "qdos/error.hpp"
#include "qdos/model.hpp"

namespace qdos {

namespace {

constexpr std::uint32_t kDumpVersion = 1;

template <typename T> T to_little(T v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    }
}

template <typename T> void put(std::ostream &out, T v) {
    v = to_little(v);
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T> T get(std::istream &in) {
    T v{};
    in.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!in) {
        throw FormatError("truncated amplitude dump");
    }
    return to_little(v);
}

void check_spins(int num_spins) {
    if (num_spins < 0 || num_spins > kMaxSpins) {
        throw SizeError("state vector of " + std::to_string(num_spins) + " spins exceeds cap " +
                        std::to_string(kMaxSpins));
    }
}

} // namespace

StateVector::StateVector(int num_spins) : num_spins_(num_spins) {
    check_spins(num_spins);
    amplitudes_.assign(std::size_t{1} << num_spins, Complex{0.0, 0.0});
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const auto &a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    const double inv = 1.0 / n;
    for (auto &a : amplitudes_) a *= inv;
}

bool StateVector::is_real() const noexcept {
    for (const auto &a : amplitudes_) {
        if (a.imag() != 0.0) return false;
    }
    return true;
}

std::string_view to_string(RandomStateKind kind) noexcept {
    switch (kind) {
    case RandomStateKind::GaussianComplex:
        return "gaussian_complex";
    case RandomStateKind::RandomSign:
        return "random_sign";
    }
    return "unknown";
}

RandomStateKind parse_random_state_kind(std::string_view name) {
    if (name == "random_sign") return RandomStateKind::RandomSign;
    if (name == "gaussian_complex") return RandomStateKind::GaussianComplex;
    throw FormatError("unknown random state kind '" + std::string(name) + "'");
}

StateVector basis_state(int num_spins, std::uint64_t index) {
    StateVector s(num_spins);
    if (index >= s.dimension()) {
        throw std::out_of_range("basis index " + std::to_string(index) + " outside [0, " +
                                std::to_string(s.dimension()) + ")");
    }
    s[index] = 1.0;
    return s;
}

StateVector random_state(int num_spins, RandomStateKind kind, std::uint64_t seed) {
    if (num_spins < 1) {
        throw std::invalid_argument("random_state needs at least one spin");
    }
    StateVector s(num_spins);
    std::mt19937_64 rng(seed);
    auto amps = s.amplitudes();
    switch (kind) {
    case RandomStateKind::RandomSign: {
        const double a = 1.0 / std::sqrt(static_cast<double>(s.dimension()));
        std::uint64_t bits = 0;
        for (std::size_t n = 0; n < amps.size(); ++n) {
            if (n % 64 == 0) bits = rng();
            amps[n] = ((bits >> (n % 64)) & 1U) ? a : -a;
        }
        break;
    }
    case RandomStateKind::GaussianComplex: {
        // Real and imaginary parts each N(0, 1/2): E|a|^2 = 1 before scaling.
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        for (auto &a : amps) {
            const double re = normal(rng);
            const double im = normal(rng);
            a = {re, im};
        }
        s.normalize();
        break;
    }
    }
    return s;
}

std::uint64_t sample_seed(std::uint64_t base_seed, std::uint64_t sample_index) noexcept {
    std::uint64_t z = base_seed + (sample_index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Complex inner_product(const StateVector &u, const StateVector &v) {
    if (u.dimension() != v.dimension()) {
        throw DimensionMismatch("inner product of " + std::to_string(u.num_spins()) + "- and " +
                                std::to_string(v.num_spins()) + "-spin states");
    }
    // Accumulate re/im separately; std::complex operator* adds NaN checks.
    double re = 0.0;
    double im = 0.0;
    const auto a = u.amplitudes();
    const auto b = v.amplitudes();
    for (std::size_t n = 0; n < a.size(); ++n) {
        re += a[n].real() * b[n].real() + a[n].imag() * b[n].imag();
        im += a[n].real() * b[n].imag() - a[n].imag() * b[n].real();
    }
    return {re, im};
}

void write_amplitudes(const StateVector &state, std::ostream &out) {
    out.write("SVEC", 4);
    put<std::uint32_t>(out, kDumpVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.num_spins()));
    put<std::uint32_t>(out, 0); // reserved, pads the header to 16 bytes
    for (const auto &a : state.amplitudes()) {
        put<double>(out, a.real());
        put<double>(out, a.imag());
    }
}

StateVector read_amplitudes(std::istream &in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "SVEC", 4) != 0) {
        throw FormatError("not an SVEC amplitude dump");
    }
    if (const auto version = get<std::uint32_t>(in); version != kDumpVersion) {
        throw FormatError("unsupported SVEC version " + std::to_string(version));
    }
    const auto num_spins = static_cast<int>(get<std::uint32_t>(in));
    (void)get<std::uint32_t>(in);
    StateVector s(num_spins);
    for (auto &a : s.amplitudes()) {
        const double re = get<double>(in);
        const double im = get<double>(in);
        a = {re, im};
    }
    return s;
}

} // namespace qdos
