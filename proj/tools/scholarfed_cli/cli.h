// Copyright 2026 The ScholarFed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCHOLARFED_TOOLS_CLI_H_
#define SCHOLARFED_TOOLS_CLI_H_

#include <functional>
#include <map>
#include <ostream>
#include <stop_token>
#include <string>
#include <vector>

namespace scholarfed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotFound = 2;

// Lets embedders drive the long-running subcommands. Without a stop token,
// `serve` and `stub` block until SIGINT or SIGTERM.
struct Hooks {
  // Called once listening, with role name -> port ("gateway" for serve).
  std::function<void(const std::map<std::string, int>&)> on_ready;
  std::stop_token stop;
};

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const Hooks& hooks = {});

}  // namespace scholarfed::cli

#endif  // SCHOLARFED_TOOLS_CLI_H_
