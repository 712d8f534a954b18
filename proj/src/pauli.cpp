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

#include "asyn/pauli.hpp"

#include <stdexcept>

#include "asyn/errors.hpp"

namespace asyn {

char pauli_char(PauliOp p) {
  switch (p) {
    case PauliOp::I: return 'I';
    case PauliOp::X: return 'X';
    case PauliOp::Z: return 'Z';
    case PauliOp::Y: return 'Y';
  }
  return '?';
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'I': case '_': return PauliOp::I;
    case 'X': return PauliOp::X;
    case 'Z': return PauliOp::Z;
    case 'Y': return PauliOp::Y;
    default: throw ParseError(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(BitVec x, BitVec z) : x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size()) throw std::invalid_argument("PauliString: x/z length mismatch");
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) p.set(q, pauli_from_char(text[q]));
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t q, PauliOp op) {
  if (q >= n) throw std::invalid_argument("PauliString::single: qubit out of range");
  PauliString p(n);
  p.set(q, op);
  return p;
}

void PauliString::set(std::size_t q, PauliOp p) {
  const auto v = static_cast<unsigned>(p);
  x_.set(q, v & 1u);
  z_.set(q, v & 2u);
}

void PauliString::apply(std::size_t q, PauliOp p) {
  const auto v = static_cast<unsigned>(p);
  if (v & 1u) x_.flip(q);
  if (v & 2u) z_.flip(q);
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.num_words(); ++i) {
    w += static_cast<std::size_t>(std::popcount(x_.word(i) | z_.word(i)));
  }
  return w;
}

std::string PauliString::str() const {
  std::string s(n(), 'I');
  for (std::size_t q = 0; q < n(); ++q) s[q] = pauli_char(at(q));
  return s;
}

PauliString& PauliString::operator*=(const PauliString& o) {
  if (o.n() != n()) throw std::invalid_argument("Pauli product: dimension mismatch");
  x_ ^= o.x_;
  z_ ^= o.z_;
  return *this;
}

PauliString compose(const PauliString& a, const PauliString& b) {
  PauliString r = a;
  r *= b;
  return r;
}

bool symplectic_parity(const PauliString& a, const PauliString& b) {
  if (a.n() != b.n()) throw std::invalid_argument("commutation: dimension mismatch");
  return dot(a.x(), b.z()) != dot(a.z(), b.x());
}

bool commutes(const PauliString& a, const PauliString& b) { return !symplectic_parity(a, b); }

BitVec syndrome(const PauliString& error, const std::vector<PauliString>& stabilizers) {
  BitVec s(stabilizers.size());
  for (std::size_t i = 0; i < stabilizers.size(); ++i) {
    if (symplectic_parity(error, stabilizers[i])) s.set(i, true);
  }
  return s;
}

void conjugate_in_place(PauliString& f, const PauliCheck& c) {
  const std::size_t d = c.data;
  const std::size_t a = c.ancilla;
  if (d == a) throw std::invalid_argument("check: data and ancilla coincide");
  if (d >= f.n() || a >= f.n()) throw std::invalid_argument("check: qubit index out of range");
  if (c.basis == PauliOp::Z) {
    if (f.x()[d]) f.x().flip(a);
    if (f.z()[a]) f.z().flip(d);
  } else if (c.basis == PauliOp::X) {
    if (f.z()[a]) f.x().flip(d);
    if (f.z()[d]) f.x().flip(a);
  } else {
    throw std::invalid_argument("check: basis must be X or Z");
  }
}

PauliString conjugate_through_check(const PauliString& frame, const PauliCheck& check) {
  PauliString f = frame;
  conjugate_in_place(f, check);
  return f;
}

}  // namespace asyn
