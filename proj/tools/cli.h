// Copyright 2026 The ReVOS Toolkit Authors.
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

#ifndef REVOS_TOOLS_CLI_H_
#define REVOS_TOOLS_CLI_H_

#include <string>
#include <vector>

namespace revos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitInternal = 4;

inline constexpr char kToolVersion[] = "0.1.0";

// Entry point shared by the binary and in-process tests. `args[0]` is the
// program name.
int Run(std::vector<std::string> args);

// Returns `args` with values from a --config JSON file appended for every
// flag not already given. Keys may sit at the top level or under an object
// named after the subcommand (which wins over top level).
std::vector<std::string> MergeConfig(const std::vector<std::string>& args);

}  // namespace revos::cli

#endif  // REVOS_TOOLS_CLI_H_
