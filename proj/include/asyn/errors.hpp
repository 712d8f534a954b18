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

#ifndef ASYN_ERRORS_HPP
#define ASYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace asyn {

// Malformed input files or text (exit code 2 at the command line).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stabilizer code that violates one of its structural invariants (exit 3).
class CodeInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incompatible configuration: wrong decoder for a code, schedule for another
// code, unsupported method, out-of-range parameter (exit 4).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A component broke its contract, e.g. a decoder returned a correction whose
// syndrome differs from its input (exit 5).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace asyn

#endif  // ASYN_ERRORS_HPP
