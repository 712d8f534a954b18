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

#include "asyn/gf2.hpp"

namespace asyn::gf2 {

std::size_t rank(std::vector<BitVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t width = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p][col]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][col]) rows[i] ^= rows[r];
    }
    ++r;
  }
  return r;
}

namespace {

std::size_t first_set(const BitVec& v) {
  for (std::size_t w = 0; w < v.num_words(); ++w) {
    if (v.word(w)) return w * 64 + static_cast<std::size_t>(std::countr_zero(v.word(w)));
  }
  return v.size();
}

}  // namespace

bool Basis::insert(const BitVec& v) {
  BitVec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (r[pivots_[i]]) r ^= rows_[i];
  }
  const std::size_t p = first_set(r);
  if (p == r.size()) return false;
  for (auto& row : rows_) {
    if (row[p]) row ^= r;
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool Basis::in_span(const BitVec& v) const {
  BitVec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (r[pivots_[i]]) r ^= rows_[i];
  }
  return r.none();
}

std::optional<BitVec> solve_columns(const std::vector<BitVec>& cols, const BitVec& b) {
  const std::size_t m = b.size();
  const std::size_t nc = cols.size();
  // Each reduced column carries a record of which original columns compose it.
  std::vector<BitVec> red;
  std::vector<BitVec> comb;
  std::vector<std::size_t> piv;
  for (std::size_t j = 0; j < nc; ++j) {
    BitVec c = cols[j];
    BitVec k(nc);
    k.set(j, true);
    for (std::size_t i = 0; i < red.size(); ++i) {
      if (c[piv[i]]) {
        c ^= red[i];
        k ^= comb[i];
      }
    }
    const std::size_t p = first_set(c);
    if (p == m) continue;
    red.push_back(std::move(c));
    comb.push_back(std::move(k));
    piv.push_back(p);
  }
  BitVec r = b;
  BitVec x(nc);
  // Forward reduction against columns in insertion order (pivots are not
  // cleared upward, so apply in order).
  for (std::size_t i = 0; i < red.size(); ++i) {
    if (r[piv[i]]) {
      r ^= red[i];
      x ^= comb[i];
    }
  }
  if (r.any()) return std::nullopt;
  return x;
}

}  // namespace asyn::gf2
