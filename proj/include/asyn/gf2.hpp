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

#ifndef ASYN_GF2_HPP
#define ASYN_GF2_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "asyn/bitvec.hpp"

namespace asyn::gf2 {

/// Rank of a set of row vectors over GF(2).
std::size_t rank(std::vector<BitVec> rows);

/// Incremental row-echelon basis. Supports span membership tests and
/// expressing a vector as a combination of inserted rows.
class Basis {
 public:
  explicit Basis(std::size_t width) : width_(width) {}

  /// Inserts v; returns false if v was already in the span.
  bool insert(const BitVec& v);
  bool in_span(const BitVec& v) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t width_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solves A x = b where A is given column-wise (cols[j] has length m = |b|).
/// Returns one solution, or nullopt when b is outside the column span. Columns
/// are eliminated in the given order, so the solution is supported on the
/// earliest independent columns.
std::optional<BitVec> solve_columns(const std::vector<BitVec>& cols, const BitVec& b);

}  // namespace asyn::gf2

#endif  // ASYN_GF2_HPP
