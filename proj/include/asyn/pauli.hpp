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

#ifndef ASYN_PAULI_HPP
#define ASYN_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "asyn/bitvec.hpp"

namespace asyn {

enum class PauliOp : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(PauliOp p);
PauliOp pauli_from_char(char c);

/// Phase-free Pauli operator on n qubits in (x|z) form. Y is x=z=1.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : x_(n), z_(n) {}
  PauliString(BitVec x, BitVec z);

  /// Parses a string over {I,X,Y,Z}; character i is qubit i.
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t n, std::size_t q, PauliOp p);

  std::size_t n() const { return x_.size(); }
  const BitVec& x() const { return x_; }
  const BitVec& z() const { return z_; }
  BitVec& x() { return x_; }
  BitVec& z() { return z_; }

  PauliOp at(std::size_t q) const {
    return static_cast<PauliOp>((x_[q] ? 1 : 0) | (z_[q] ? 2 : 0));
  }
  void set(std::size_t q, PauliOp p);
  /// Multiplies the letter p onto qubit q.
  void apply(std::size_t q, PauliOp p);

  std::size_t weight() const;
  bool is_identity() const { return x_.none() && z_.none(); }
  std::string str() const;

  PauliString& operator*=(const PauliString& o);
  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  BitVec x_;
  BitVec z_;
};

/// Componentwise XOR; throws std::invalid_argument on length mismatch.
PauliString compose(const PauliString& a, const PauliString& b);

/// Symplectic inner product mod 2 (true when the operators anticommute).
bool symplectic_parity(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

/// Bit i is set when `error` anticommutes with stabilizers[i].
BitVec syndrome(const PauliString& error, const std::vector<PauliString>& stabilizers);

/// One two-qubit interaction between a data qubit and a stabilizer ancilla.
struct PauliCheck {
  std::size_t data = 0;
  std::size_t ancilla = 0;
  PauliOp basis = PauliOp::Z;

  friend auto operator<=>(const PauliCheck&, const PauliCheck&) = default;
};

/// Frame update for a single check. Z-check: CNOT data->ancilla.
/// X-check: H(anc) CNOT anc->data H(anc).
PauliString conjugate_through_check(const PauliString& frame, const PauliCheck& check);
void conjugate_in_place(PauliString& frame, const PauliCheck& check);

}  // namespace asyn

#endif  // ASYN_PAULI_HPP
