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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qdos {

/// 64-bit FNV-1a. Used for config and instance hashes that must stay
/// stable across runs and platforms (std::hash does not).
std::uint64_t fnv1a64(std::string_view bytes);

/// Lower-case 16-digit hex rendering.
std::string hex64(std::uint64_t value);

} // namespace qdos
