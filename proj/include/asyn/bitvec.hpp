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

#ifndef ASYN_BITVEC_HPP
#define ASYN_BITVEC_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace asyn {

/// Fixed-length packed bit vector. Bits past size() in the last word are
/// always zero, so word-wise comparisons and popcounts are exact.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  std::size_t num_words() const { return words_.size(); }

  bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }
  bool any() const { return !none(); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend bool operator==(const BitVec& a, const BitVec& b) = default;

  /// Parity of the popcount of (a & b).
  friend bool dot(const BitVec& a, const BitVec& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
  }

  std::uint64_t word(std::size_t i) const { return words_[i]; }
  std::uint64_t& word(std::size_t i) { return words_[i]; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Low 64 bits; the syndrome index used by table decoders.
  std::uint64_t low_bits() const { return words_.empty() ? 0 : words_[0]; }
  static BitVec from_low_bits(std::size_t n, std::uint64_t bits) {
    BitVec v(n);
    if (!v.words_.empty()) v.words_[0] = n >= 64 ? bits : bits & ((std::uint64_t{1} << n) - 1);
    return v;
  }

  /// '0'/'1' characters, index 0 first.
  std::string str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
      if ((*this)[i]) s[i] = '1';
    }
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (auto w : v.words()) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace asyn

#endif  // ASYN_BITVEC_HPP
