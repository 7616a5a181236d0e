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
 * Spin-1/2 Hamiltonians with pair couplings and local fields,
 *
 *   H = - sum_{bonds (i,j)} sum_a J_ij^a S_i^a S_j^a - sum_i sum_a h_i^a S_i^a,
 *
 * where S^a are spin-1/2 operators (half the Pauli matrices).
 *
 * Basis convention used throughout the library: site i is bit i of the
 * basis-state index, bit value 1 is spin up (S^z = +1/2) and bit value 0
 * is spin down (S^z = -1/2).
 */
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdos {

enum class Axis : int { x = 0, y = 1, z = 2 };

/// Components indexed by Axis: {x, y, z}.
using Vec3 = std::array<double, 3>;

inline double component(const Vec3 &v, Axis a) { return v[static_cast<int>(a)]; }

struct Bond {
    int i = 0;
    int j = 0;
    Vec3 coupling{};

    friend auto operator<=>(const Bond &, const Bond &) = default;
};

/// Largest register the state-vector code will allocate (2^30 amplitudes).
inline constexpr int kMaxSpins = 30;

/// Cap for dense-matrix construction and exact diagonalization.
inline constexpr int kDenseSpinCap = 12;

class SpinHamiltonian {
  public:
    /// Bonds given as (j, i) with j > i are reordered to (i, j). Sites must
    /// lie in [0, num_spins), self-bonds and repeated pairs are rejected.
    /// An empty `fields` means all fields are zero; otherwise it must have
    /// one entry per site.
    SpinHamiltonian(int num_spins, std::vector<Bond> bonds, std::vector<Vec3> fields = {});

    [[nodiscard]] int num_spins() const noexcept { return num_spins_; }
    [[nodiscard]] std::uint64_t dimension() const noexcept { return std::uint64_t{1} << num_spins_; }
    [[nodiscard]] std::span<const Bond> bonds() const noexcept { return bonds_; }
    [[nodiscard]] std::span<const Vec3> fields() const noexcept { return fields_; }
    [[nodiscard]] std::size_t num_bonds() const noexcept { return bonds_.size(); }

    /// True if any coupling or field along `a` is nonzero.
    [[nodiscard]] bool has_axis(Axis a) const noexcept;

    /// The matrix is real in the S^z basis iff no site carries an h^y field.
    [[nodiscard]] bool is_real() const noexcept;

    /// Largest |J| or |h| over all terms; zero for the empty Hamiltonian.
    [[nodiscard]] double coupling_scale() const noexcept;

    friend bool operator==(const SpinHamiltonian &, const SpinHamiltonian &) = default;

  private:
    int num_spins_;
    std::vector<Bond> bonds_;
    std::vector<Vec3> fields_;
};

/// Triangle-shaped patch of the triangular lattice with free boundaries.
/// Row r (0-based, top first) holds r + 1 sites; sites are numbered
/// row-major, so site (r, c) has index r(r+1)/2 + c.
struct LatticeSpec {
    int rows = 1;
    double coupling = -1.0;

    [[nodiscard]] int num_sites() const noexcept { return rows * (rows + 1) / 2; }
    [[nodiscard]] int num_bonds() const noexcept { return 3 * rows * (rows - 1) / 2; }
};

/// Isotropic nearest-neighbour model on the patch: Jx = Jy = Jz = coupling,
/// no fields. J = -1 is the antiferromagnetic Heisenberg model.
SpinHamiltonian build_triangular(const LatticeSpec &spec);

/// Open chain 0-1-...-(L-1) with isotropic coupling; used for benchmarks.
SpinHamiltonian build_chain(int num_spins, double coupling = -1.0);

/// Upper bound on max_i |E_i| from the triangle inequality:
/// (1/4) sum_bonds sum_a |J^a| + (1/2) sum_sites sum_a |h^a|.
double energy_bound(const SpinHamiltonian &h);

/// Interval [lo, hi] guaranteed to contain the spectrum. The bonds are split
/// into disjoint triangles where the bond graph has them and single bonds
/// otherwise; each field joins one cluster holding its site. The sum of the
/// clusters' exact extreme eigenvalues bounds the whole, and is far tighter
/// than energy_bound on frustrated lattices (tri15: [-7.5, 7.5] vs 22.5).
struct EnergyRange {
    double lo = 0.0;
    double hi = 0.0;
};
EnergyRange energy_range(const SpinHamiltonian &h);

/// Dense Hermitian matrix in the S^z product basis. Throws SizeError when
/// num_spins exceeds `cap`.
Eigen::MatrixXcd dense_matrix(const SpinHamiltonian &h, int cap = kDenseSpinCap);

} // namespace qdos
