/*
   Copyright 2026 The cabl Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cabl::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericFailure = 1;
inline constexpr int kUsageError = 2;

// Runs the `cabl` command line. `args` excludes the program name.
// Subcommands: match, group, evidence, hetero, distfit, naa, report.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "24s", "60", "1.5h", "2.7d" -> seconds. Throws DomainError.
double parse_duration(const std::string& text);

}  // namespace cabl::cli
