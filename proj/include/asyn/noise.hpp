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

#ifndef ASYN_NOISE_HPP
#define ASYN_NOISE_HPP

#include <cstddef>
#include <map>
#include <string>

namespace asyn {

struct QubitOverride {
  double p_2q_mult = 1.0;
  double p_idle_mult = 1.0;

  friend bool operator==(const QubitOverride&, const QubitOverride&) = default;
};

/// Depolarizing noise per check and per idle qubit-tick. Defaults are the
/// published heavy-hex device rates.
struct NoiseModel {
  double p_2q = 0.0074;
  double p_idle = 0.0052;
  double p_meas = 0.0;
  std::map<std::size_t, QubitOverride> overrides;

  /// Rate for a check on (data, ancilla): p_2q times both qubits' multipliers.
  double check_rate(std::size_t data, std::size_t ancilla) const;
  double idle_rate(std::size_t qubit) const;

  static NoiseModel zero() { return {0.0, 0.0, 0.0, {}}; }
  static NoiseModel uniform(double p) { return {p, p, 0.0, {}}; }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Throws ConfigError if a rate leaves [0, 1] or an override names a qubit
/// outside [0, num_qubits).
void validate_noise(const NoiseModel& noise, std::size_t num_qubits);

NoiseModel parse_noise(const std::string& json_text);
NoiseModel load_noise(const std::string& path);
std::string noise_to_json(const NoiseModel& noise);

/// Accepts "brisbane", "zero", an inline "p_2q=...,p_idle=...,p_meas=..."
/// list, or a path to a noise file.
NoiseModel noise_from_spec(const std::string& spec);

}  // namespace asyn

#endif  // ASYN_NOISE_HPP
