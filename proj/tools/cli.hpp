// Copyright 2026 The gts Authors.
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

#ifndef GTS_TOOLS_CLI_HPP_
#define GTS_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace gts::cli {

// Exit statuses.
inline constexpr int kYes = 0;
inline constexpr int kNo = 1;  // Also: harness discrepancies.
inline constexpr int kLimit = 2;
inline constexpr int kUsage = 64;  // Parse errors and bad flags.
inline constexpr int kData = 65;   // Input outside the command's class.
inline constexpr int kNoInput = 66;

// Runs one command; `args` excludes the program name. Standard input is
// read when a path is "-".
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

// "r1-r5", "r1,r3", "r2-4" and so on; throws std::invalid_argument.
std::vector<std::string> parse_rule_list(const std::string& list);

}  // namespace gts::cli

#endif  // GTS_TOOLS_CLI_HPP_
