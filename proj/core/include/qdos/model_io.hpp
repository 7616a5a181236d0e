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
 * JSON text form of a SpinHamiltonian. Two shapes are accepted:
 *
 *   {"L": 3, "bonds": [[0, 1, Jx, Jy, Jz], ...], "fields": [[hx, hy, hz], ...]}
 *   {"triangular": {"rows": 3, "J": -1.0}}
 *
 * "fields" is optional in the first shape.
 */
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qdos/model.hpp"

namespace qdos {

/// Throws FormatError on malformed text or invalid content.
SpinHamiltonian parse_hamiltonian(std::string_view json_text);

SpinHamiltonian load_hamiltonian(const std::filesystem::path &path);

/// Canonical explicit-form JSON (compact, fixed key order). Two equal
/// Hamiltonians always produce identical text.
std::string to_json(const SpinHamiltonian &h);

} // namespace qdos
