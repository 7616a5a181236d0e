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

#include "qdos/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qdos/error.hpp"

namespace qdos {

namespace {

using nlohmann::json;

SpinHamiltonian from_json(const json &j) {
    if (j.contains("triangular")) {
        const auto &t = j.at("triangular");
        LatticeSpec spec;
        spec.rows = t.at("rows").get<int>();
        spec.coupling = t.value("J", -1.0);
        return build_triangular(spec);
    }
    const int num_spins = j.at("L").get<int>();
    std::vector<Bond> bonds;
    for (const auto &row : j.value("bonds", json::array())) {
        if (!row.is_array() || row.size() != 5) {
            throw FormatError("each bond must be [i, j, Jx, Jy, Jz]");
        }
        bonds.push_back({row[0].get<int>(), row[1].get<int>(),
                         {row[2].get<double>(), row[3].get<double>(), row[4].get<double>()}});
    }
    std::vector<Vec3> fields;
    for (const auto &row : j.value("fields", json::array())) {
        if (!row.is_array() || row.size() != 3) {
            throw FormatError("each field must be [hx, hy, hz]");
        }
        fields.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    }
    return SpinHamiltonian(num_spins, std::move(bonds), std::move(fields));
}

} // namespace

SpinHamiltonian parse_hamiltonian(std::string_view json_text) {
    try {
        return from_json(json::parse(json_text));
    } catch (const json::exception &e) {
        throw FormatError(std::string("hamiltonian: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("hamiltonian: ") + e.what());
    } catch (const SizeError &e) {
        throw FormatError(std::string("hamiltonian: ") + e.what());
    }
}

SpinHamiltonian load_hamiltonian(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open hamiltonian file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hamiltonian(buf.str());
}

std::string to_json(const SpinHamiltonian &h) {
    json bonds = json::array();
    for (const auto &b : h.bonds()) {
        bonds.push_back({b.i, b.j, b.coupling[0], b.coupling[1], b.coupling[2]});
    }
    json fields = json::array();
    for (const auto &f : h.fields()) {
        fields.push_back({f[0], f[1], f[2]});
    }
    // nlohmann::json keeps object keys sorted, so the dump is canonical.
    json j = {{"L", h.num_spins()}, {"bonds", std::move(bonds)}, {"fields", std::move(fields)}};
    return j.dump();
}

} // namespace qdos
