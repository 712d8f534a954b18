// Copyright 2026 The asyn Authors
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

#ifndef ASYN_CLI_HPP
#define ASYN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace asyn::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kCodeInvariant = 3,
  kConfig = 4,
  kContract = 5,
};

/// Runs one command line. `args` excludes the program name. Normal output
/// goes to `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Path with a trailing ".json" replaced by `suffix`:
/// sibling_path("a.json", ".results.csv") == "a.results.csv".
std::string sibling_path(const std::string& path, const std::string& suffix);

}  // namespace asyn::cli

#endif  // ASYN_CLI_HPP
