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

#include "qdos/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qdos/error.hpp"

namespace qdos {

SpinHamiltonian::SpinHamiltonian(int num_spins, std::vector<Bond> bonds, std::vector<Vec3> fields)
    : num_spins_(num_spins), bonds_(std::move(bonds)), fields_(std::move(fields)) {
    if (num_spins < 1 || num_spins > kMaxSpins) {
        throw SizeError("num_spins must lie in [1, " + std::to_string(kMaxSpins) +
                        "], got " + std::to_string(num_spins));
    }
    std::set<std::pair<int, int>> seen;
    for (auto &b : bonds_) {
        if (b.i > b.j) {
            std::swap(b.i, b.j);
        }
        if (b.i < 0 || b.j >= num_spins) {
            throw std::invalid_argument("bond (" + std::to_string(b.i) + ", " +
                                        std::to_string(b.j) + ") outside [0, " +
                                        std::to_string(num_spins) + ")");
        }
        if (b.i == b.j) {
            throw std::invalid_argument("self-bond on site " + std::to_string(b.i));
        }
        if (!seen.emplace(b.i, b.j).second) {
            throw std::invalid_argument("duplicate bond (" + std::to_string(b.i) + ", " +
                                        std::to_string(b.j) + ")");
        }
    }
    if (fields_.empty()) {
        fields_.assign(static_cast<std::size_t>(num_spins), Vec3{0.0, 0.0, 0.0});
    } else if (fields_.size() != static_cast<std::size_t>(num_spins)) {
        throw std::invalid_argument("expected " + std::to_string(num_spins) +
                                    " field entries, got " + std::to_string(fields_.size()));
    }
}

bool SpinHamiltonian::has_axis(Axis a) const noexcept {
    return std::any_of(bonds_.begin(), bonds_.end(),
                       [a](const Bond &b) { return component(b.coupling, a) != 0.0; }) ||
           std::any_of(fields_.begin(), fields_.end(),
                       [a](const Vec3 &f) { return component(f, a) != 0.0; });
}

bool SpinHamiltonian::is_real() const noexcept {
    return std::none_of(fields_.begin(), fields_.end(),
                        [](const Vec3 &f) { return component(f, Axis::y) != 0.0; });
}

double SpinHamiltonian::coupling_scale() const noexcept {
    double s = 0.0;
    for (const auto &b : bonds_) {
        for (double v : b.coupling) s = std::max(s, std::abs(v));
    }
    for (const auto &f : fields_) {
        for (double v : f) s = std::max(s, std::abs(v));
    }
    return s;
}

SpinHamiltonian build_triangular(const LatticeSpec &spec) {
    if (spec.rows < 1) {
        throw std::invalid_argument("triangular patch needs rows >= 1");
    }
    auto site = [](int r, int c) { return r * (r + 1) / 2 + c; };
    const Vec3 j{spec.coupling, spec.coupling, spec.coupling};
    std::vector<Bond> bonds;
    bonds.reserve(static_cast<std::size_t>(spec.num_bonds()));
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c <= r; ++c) {
            if (c < r) bonds.push_back({site(r, c), site(r, c + 1), j});
            if (r + 1 < spec.rows) {
                bonds.push_back({site(r, c), site(r + 1, c), j});
                bonds.push_back({site(r, c), site(r + 1, c + 1), j});
            }
        }
    }
    return SpinHamiltonian(spec.num_sites(), std::move(bonds));
}

SpinHamiltonian build_chain(int num_spins, double coupling) {
    std::vector<Bond> bonds;
    for (int i = 0; i + 1 < num_spins; ++i) {
        bonds.push_back({i, i + 1, {coupling, coupling, coupling}});
    }
    return SpinHamiltonian(num_spins, std::move(bonds));
}

double energy_bound(const SpinHamiltonian &h) {
    double bound = 0.0;
    for (const auto &b : h.bonds()) {
        for (double v : b.coupling) bound += 0.25 * std::abs(v);
    }
    for (const auto &f : h.fields()) {
        for (double v : f) bound += 0.5 * std::abs(v);
    }
    return bound;
}

EnergyRange energy_range(const SpinHamiltonian &h) {
    const auto bonds = h.bonds();
    std::map<std::pair<int, int>, std::size_t> index;
    std::vector<std::vector<int>> neighbours(static_cast<std::size_t>(h.num_spins()));
    for (std::size_t b = 0; b < bonds.size(); ++b) {
        index[{bonds[b].i, bonds[b].j}] = b;
        neighbours[static_cast<std::size_t>(bonds[b].i)].push_back(bonds[b].j);
        neighbours[static_cast<std::size_t>(bonds[b].j)].push_back(bonds[b].i);
    }
    const auto find = [&](int a, int b) -> std::optional<std::size_t> {
        const auto it = index.find({std::min(a, b), std::max(a, b)});
        if (it == index.end()) return std::nullopt;
        return it->second;
    };

    // Greedy cover: each unused bond takes the first triangle whose other two
    // bonds are still free.
    std::vector<bool> used(bonds.size(), false);
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t b = 0; b < bonds.size(); ++b) {
        if (used[b]) continue;
        std::vector<std::size_t> cluster{b};
        for (int k : neighbours[static_cast<std::size_t>(bonds[b].i)]) {
            const auto ik = find(bonds[b].i, k);
            const auto jk = find(bonds[b].j, k);
            if (k != bonds[b].j && jk && !used[*ik] && !used[*jk]) {
                cluster.insert(cluster.end(), {*ik, *jk});
                break;
            }
        }
        for (auto c : cluster) used[c] = true;
        clusters.push_back(std::move(cluster));
    }

    std::vector<Vec3> fields(h.fields().begin(), h.fields().end());
    EnergyRange range;
    const auto add_cluster = [&](const std::vector<int> &sites, const std::vector<std::size_t> &members) {
        std::map<int, int> local;
        for (int s : sites) local.emplace(s, static_cast<int>(local.size()));
        std::vector<Bond> local_bonds;
        for (auto m : members) {
            local_bonds.push_back({local.at(bonds[m].i), local.at(bonds[m].j), bonds[m].coupling});
        }
        std::vector<Vec3> local_fields;
        if (!fields.empty()) {
            local_fields.resize(sites.size());
            for (int s : sites) {
                local_fields[static_cast<std::size_t>(local.at(s))] = fields[static_cast<std::size_t>(s)];
                fields[static_cast<std::size_t>(s)] = Vec3{};
            }
        }
        const SpinHamiltonian sub(static_cast<int>(sites.size()), std::move(local_bonds), std::move(local_fields));
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(sub), Eigen::EigenvaluesOnly);
        range.lo += solver.eigenvalues().minCoeff();
        range.hi += solver.eigenvalues().maxCoeff();
    };
    for (const auto &cluster : clusters) {
        std::set<int> sites;
        for (auto m : cluster) sites.insert({bonds[m].i, bonds[m].j});
        add_cluster({sites.begin(), sites.end()}, cluster);
    }
    // Fields on sites no bond touched.
    for (int s = 0; s < static_cast<int>(fields.size()); ++s) {
        if (fields[static_cast<std::size_t>(s)] != Vec3{}) add_cluster({s}, {});
    }
    return range;
}

Eigen::MatrixXcd dense_matrix(const SpinHamiltonian &h, int cap) {
    if (h.num_spins() > cap) {
        throw SizeError("dense matrix requested for " + std::to_string(h.num_spins()) +
                        " spins, cap is " + std::to_string(cap));
    }
    using cd = std::complex<double>;
    const auto dim = static_cast<Eigen::Index>(h.dimension());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const cd i_unit(0.0, 1.0);

    // Matrix elements are accumulated column by column: column n holds H|n>.
    // S^y|up> = (i/2)|down>, S^y|down> = (-i/2)|up>.
    auto spin_z = [](std::uint64_t n, int site) { return ((n >> site) & 1U) ? 0.5 : -0.5; };
    auto y_phase = [&](std::uint64_t n, int site) { return ((n >> site) & 1U) ? i_unit : -i_unit; };

    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto n = static_cast<std::uint64_t>(col);
        for (const auto &b : h.bonds()) {
            const auto [jx, jy, jz] = b.coupling;
            m(col, col) -= jz * spin_z(n, b.i) * spin_z(n, b.j);
            const auto flipped = static_cast<Eigen::Index>(n ^ (std::uint64_t{1} << b.i) ^
                                                           (std::uint64_t{1} << b.j));
            m(flipped, col) -= 0.25 * jx;
            m(flipped, col) -= 0.25 * jy * y_phase(n, b.i) * y_phase(n, b.j);
        }
        for (int s = 0; s < h.num_spins(); ++s) {
            const auto [hx, hy, hz] = h.fields()[static_cast<std::size_t>(s)];
            m(col, col) -= hz * spin_z(n, s);
            const auto flipped = static_cast<Eigen::Index>(n ^ (std::uint64_t{1} << s));
            m(flipped, col) -= 0.5 * hx;
            m(flipped, col) -= 0.5 * hy * y_phase(n, s);
        }
    }
    return m;
}

} // namespace qdos
