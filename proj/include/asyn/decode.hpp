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

#ifndef ASYN_DECODE_HPP
#define ASYN_DECODE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asyn/bitvec.hpp"
#include "asyn/code.hpp"
#include "asyn/noise.hpp"
#include "asyn/pauli.hpp"

namespace asyn {

/// Check matrix in symplectic form plus per-error weights. Elementary error
/// e = 3q + (letter - 1) is the letter X, Z or Y on data qubit q (letter order
/// X=1, Z=2, Y=3).
struct DecodingModel {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<PauliString> stabilizers;
  std::vector<PauliString> logicals;  // logical_xs then logical_zs
  std::vector<BitVec> columns;        // syndrome of each elementary error
  std::vector<double> weights;        // -log p of each elementary error

  std::size_t num_errors() const { return columns.size(); }
  PauliString error_of(std::size_t e) const;
};

/// Uniform weights when `noise` is empty. Otherwise qubit q's elementary
/// errors get p = (p_2q * m_2q(q) + p_idle * m_idle(q)) / 3.
DecodingModel build_decoding_model(const StabilizerCode& code, const std::optional<NoiseModel>& noise = {});

class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual std::string name() const = 0;
  /// Returns C with syndrome(C) == s.
  virtual PauliString decode(const BitVec& s) const = 0;
};

/// Minimum-weight coset leaders for every syndrome; r <= 24.
std::unique_ptr<Decoder> ml_lookup_decoder(const DecodingModel& model);
std::unique_ptr<Decoder> union_find_decoder(const DecodingModel& model);
/// Throws ConfigError when some elementary X or Z error flips more than two
/// checks of its sector.
std::unique_ptr<Decoder> matching_decoder(const DecodingModel& model);
std::unique_ptr<Decoder> bp_osd0_decoder(const DecodingModel& model, int iters = 30);

const std::vector<std::string>& decoder_names();
/// Looks a decoder up by name ("ml", "uf", "mwpm", "bposd").
std::unique_ptr<Decoder> make_decoder(const std::string& name, const DecodingModel& model);

}  // namespace asyn

#endif  // ASYN_DECODE_HPP
