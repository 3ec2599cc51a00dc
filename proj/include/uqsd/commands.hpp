// Copyright 2026 The uqsd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uqsd::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2 };

/// Entry point of the `uqsd` tool. `args` excludes the program name.
/// Subcommands: verify, kraus, table, sweep, simulate, baseline.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace uqsd::cli
