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

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string_view>

namespace qdos::detail {

// Round-trip precision; "nan" for undefined statistics.
inline void put_number(std::ostream &out, double v) {
    if (std::isnan(v)) {
        out << "nan";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

inline void put_comment(std::ostream &out, std::string_view comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
}

} // namespace qdos::detail
