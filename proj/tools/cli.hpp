/*
 * Copyright 2026 The ktlive Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KTL_TOOLS_CLI_HPP
#define KTL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ktl::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kNegative = 1,  // not live, Player 1 wins, violations found
    kUsage = 2,     // also "undecided at cap" for check-live and solve
    kIo = 3,
    kInput = 4,     // malformed or ill-typed input document
};

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ktl::cli

#endif
