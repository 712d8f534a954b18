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

#ifndef ASYN_CODE_HPP
#define ASYN_CODE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "asyn/pauli.hpp"

namespace asyn {

class Schedule;

struct StabilizerCode {
  std::string family;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::vector<PauliString> stabilizers;
  std::vector<PauliString> logical_xs;
  std::vector<PauliString> logical_zs;
  // How many leading stabilizers came from the file's x_stabilizers list.
  // Only used to write the file back in its original split.
  std::size_t num_x_listed = 0;

  std::size_t r() const { return stabilizers.size(); }
  bool is_css() const;

  friend bool operator==(const StabilizerCode&, const StabilizerCode&) = default;
};

/// Throws CodeInvariantError describing the first violated invariant.
void validate_code(const StabilizerCode& code);

/// Parses the JSON code format and validates. ParseError on malformed input.
StabilizerCode parse_code(const std::string& json_text);
StabilizerCode load_code(const std::string& path);
std::string code_to_json(const StabilizerCode& code);
void write_code(const StabilizerCode& code, const std::string& path);

struct CheckList {
  std::vector<PauliCheck> checks;
  std::vector<std::size_t> ancilla_of_stabilizer;  // index j -> n + j
};

CheckList derive_checks(const StabilizerCode& code);

/// Rotated surface code of odd distance d >= 3. Data qubit r*d + c sits at
/// row r (top = 0), column c. X stabilizers are listed before Z stabilizers.
StabilizerCode gen_rotated_surface(std::size_t d);

/// Infers d when `code` equals gen_rotated_surface(d) for some d.
std::optional<std::size_t> rotated_surface_distance(const StabilizerCode& code);

/// Hand-crafted surface-code schedules: "zigzag", "clockwise", "anticlockwise".
Schedule gen_reference_schedule(const StabilizerCode& code, const std::string& kind);

/// Minimum weight of a logical operator, or nullopt if none has weight
/// <= w_max. Throws ConfigError when the enumeration would exceed ~1e8.
std::optional<std::size_t> brute_force_distance(const StabilizerCode& code, std::size_t w_max);

/// Symplectic row (x bits then z bits) of length 2n.
BitVec symplectic_row(const PauliString& p);

}  // namespace asyn

#endif  // ASYN_CODE_HPP
