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

#include <iosfwd>

#include "config.hpp"

namespace qdos::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Each command writes its files under config.output_dir and a short
/// human-readable summary to `log`. Return value is the process exit code.
int cmd_evolve(const RunConfig &config, std::ostream &log);
int cmd_dos(const RunConfig &config, std::ostream &log);
int cmd_thermo(const RunConfig &config, std::ostream &log);
int cmd_oracle(const RunConfig &config, std::ostream &log);
int cmd_bench(const RunConfig &config, std::ostream &log);

} // namespace qdos::cli
