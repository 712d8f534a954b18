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

#include "asyn/code.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "asyn/errors.hpp"
#include "asyn/gf2.hpp"
#include "asyn/schedule.hpp"

namespace asyn {

using ojson = nlohmann::ordered_json;

BitVec symplectic_row(const PauliString& p) {
  const std::size_t n = p.n();
  BitVec v(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x()[q]) v.set(q, true);
    if (p.z()[q]) v.set(n + q, true);
  }
  return v;
}

bool StabilizerCode::is_css() const {
  for (const auto& s : stabilizers) {
    if (s.x().any() && s.z().any()) return false;
  }
  return true;
}

void validate_code(const StabilizerCode& c) {
  if (c.n == 0) throw CodeInvariantError("code has n = 0");
  auto check_len = [&](const std::vector<PauliString>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].n() != c.n) {
        throw CodeInvariantError(std::string(what) + " " + std::to_string(i) + " has length " +
                                 std::to_string(v[i].n()) + ", expected n = " + std::to_string(c.n));
      }
    }
  };
  check_len(c.stabilizers, "stabilizer");
  check_len(c.logical_xs, "logical_x");
  check_len(c.logical_zs, "logical_z");

  for (std::size_t i = 0; i < c.r(); ++i) {
    for (std::size_t j = i + 1; j < c.r(); ++j) {
      if (!commutes(c.stabilizers[i], c.stabilizers[j])) {
        throw CodeInvariantError("stabilizers " + std::to_string(i) + " (" + c.stabilizers[i].str() +
                                 ") and " + std::to_string(j) + " (" + c.stabilizers[j].str() +
                                 ") anticommute");
      }
    }
  }

  gf2::Basis basis(2 * c.n);
  for (std::size_t i = 0; i < c.r(); ++i) {
    if (!basis.insert(symplectic_row(c.stabilizers[i]))) {
      throw CodeInvariantError("stabilizer " + std::to_string(i) +
                               " is dependent on the preceding stabilizers");
    }
  }
  if (c.r() > c.n || c.k != c.n - c.r()) {
    throw CodeInvariantError("k = " + std::to_string(c.k) + " but n - r = " +
                             std::to_string(static_cast<long long>(c.n) - static_cast<long long>(c.r())));
  }
  if (c.logical_xs.size() != c.k || c.logical_zs.size() != c.k) {
    throw CodeInvariantError("expected " + std::to_string(c.k) + " logical X and Z operators");
  }
  auto check_logicals = [&](const std::vector<PauliString>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < c.r(); ++j) {
        if (!commutes(v[i], c.stabilizers[j])) {
          throw CodeInvariantError(std::string(what) + " " + std::to_string(i) +
                                   " anticommutes with stabilizer " + std::to_string(j));
        }
      }
      if (basis.in_span(symplectic_row(v[i]))) {
        throw CodeInvariantError(std::string(what) + " " + std::to_string(i) +
                                 " lies in the stabilizer group");
      }
    }
  };
  check_logicals(c.logical_xs, "logical_x");
  check_logicals(c.logical_zs, "logical_z");
}

namespace {

std::vector<PauliString> parse_list(const ojson& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(std::string("\"") + key + "\" must be a list");
  std::vector<PauliString> out;
  for (const auto& s : arr) {
    if (!s.is_string()) throw ParseError(std::string("\"") + key + "\" entries must be strings");
    out.push_back(PauliString::parse(s.get<std::string>()));
  }
  return out;
}

std::size_t parse_count(const ojson& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace

StabilizerCode parse_code(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("code file must be a JSON object");
  StabilizerCode c;
  if (!j.contains("family") || !j.at("family").is_string()) throw ParseError("missing string \"family\"");
  c.family = j.at("family").get<std::string>();
  c.n = parse_count(j, "n");
  c.k = parse_count(j, "k");
  c.d = parse_count(j, "d");
  c.logical_xs = parse_list(j, "logical_xs");
  c.logical_zs = parse_list(j, "logical_zs");
  auto xs = parse_list(j, "x_stabilizers");
  auto zs = parse_list(j, "z_stabilizers");
  c.num_x_listed = xs.size();
  c.stabilizers = std::move(xs);
  c.stabilizers.insert(c.stabilizers.end(), zs.begin(), zs.end());
  validate_code(c);
  return c;
}

StabilizerCode load_code(const std::string& path) { return parse_code(read_file(path)); }

std::string code_to_json(const StabilizerCode& c) {
  auto strs = [](auto first, auto last) {
    ojson a = ojson::array();
    for (auto it = first; it != last; ++it) a.push_back(it->str());
    return a;
  };
  ojson j;
  j["family"] = c.family;
  j["n"] = c.n;
  j["k"] = c.k;
  j["d"] = c.d;
  j["logical_xs"] = strs(c.logical_xs.begin(), c.logical_xs.end());
  j["logical_zs"] = strs(c.logical_zs.begin(), c.logical_zs.end());
  const auto split = c.stabilizers.begin() + static_cast<std::ptrdiff_t>(c.num_x_listed);
  j["x_stabilizers"] = strs(c.stabilizers.begin(), split);
  j["z_stabilizers"] = strs(split, c.stabilizers.end());
  return j.dump(2) + "\n";
}

void write_code(const StabilizerCode& c, const std::string& path) { write_file(path, code_to_json(c)); }

CheckList derive_checks(const StabilizerCode& c) {
  CheckList out;
  for (std::size_t j = 0; j < c.r(); ++j) {
    const auto& s = c.stabilizers[j];
    out.ancilla_of_stabilizer.push_back(c.n + j);
    for (std::size_t q = 0; q < c.n; ++q) {
      const PauliOp p = s.at(q);
      if (p == PauliOp::I) continue;
      if (p == PauliOp::Y) {
        throw ConfigError("stabilizer " + std::to_string(j) + " has Y on qubit " + std::to_string(q) +
                          ": unsupported check basis");
      }
      out.checks.push_back({q, c.n + j, p});
    }
  }
  return out;
}

namespace {

struct Plaquette {
  int r;
  int c;
  bool x_type;
};

std::vector<Plaquette> surface_plaquettes(int d) {
  std::vector<Plaquette> xs;
  std::vector<Plaquette> zs;
  for (int r = -1; r < d; ++r) {
    for (int c = -1; c < d; ++c) {
      const bool x_type = ((r + c) % 2 + 2) % 2 == 0;
      const bool row_edge = r == -1 || r == d - 1;
      const bool col_edge = c == -1 || c == d - 1;
      if (row_edge && col_edge) continue;
      if (row_edge && !x_type) continue;
      if (col_edge && x_type) continue;
      (x_type ? xs : zs).push_back({r, c, x_type});
    }
  }
  xs.insert(xs.end(), zs.begin(), zs.end());
  return xs;
}

// Corner order TL, TR, BL, BR; -1 where the corner is off the lattice.
std::array<int, 4> plaquette_corners(const Plaquette& p, int d) {
  std::array<int, 4> out{};
  const int rr[4] = {p.r, p.r, p.r + 1, p.r + 1};
  const int cc[4] = {p.c, p.c + 1, p.c, p.c + 1};
  for (int i = 0; i < 4; ++i) {
    const bool in = rr[i] >= 0 && rr[i] < d && cc[i] >= 0 && cc[i] < d;
    out[i] = in ? rr[i] * d + cc[i] : -1;
  }
  return out;
}

}  // namespace

StabilizerCode gen_rotated_surface(std::size_t d) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("rotated surface code needs odd d >= 3");
  const int di = static_cast<int>(d);
  StabilizerCode c;
  c.family = "rotated_surface";
  c.n = d * d;
  c.k = 1;
  c.d = d;
  for (const auto& p : surface_plaquettes(di)) {
    PauliString s(c.n);
    for (int q : plaquette_corners(p, di)) {
      if (q >= 0) s.set(static_cast<std::size_t>(q), p.x_type ? PauliOp::X : PauliOp::Z);
    }
    if (p.x_type) ++c.num_x_listed;
    c.stabilizers.push_back(std::move(s));
  }
  PauliString lx(c.n);
  PauliString lz(c.n);
  for (std::size_t i = 0; i < d; ++i) {
    lx.set(i * d, PauliOp::X);
    lz.set(i, PauliOp::Z);
  }
  c.logical_xs.push_back(std::move(lx));
  c.logical_zs.push_back(std::move(lz));
  validate_code(c);
  return c;
}

std::optional<std::size_t> rotated_surface_distance(const StabilizerCode& code) {
  std::size_t d = 3;
  while (d * d < code.n) d += 2;
  if (d * d != code.n) return std::nullopt;
  const auto ref = gen_rotated_surface(d);
  if (ref.stabilizers != code.stabilizers) return std::nullopt;
  return d;
}

Schedule gen_reference_schedule(const StabilizerCode& code, const std::string& kind) {
  // Ticks for corners TL, TR, BL, BR.
  std::array<std::size_t, 4> x_order{};
  std::array<std::size_t, 4> z_order{};
  if (kind == "zigzag") {
    x_order = {1, 2, 3, 4};
    z_order = {1, 3, 2, 4};
  } else if (kind == "clockwise") {
    x_order = z_order = {1, 2, 4, 3};
  } else if (kind == "anticlockwise") {
    x_order = z_order = {1, 4, 2, 3};
  } else {
    throw ConfigError("unknown reference schedule \"" + kind +
                      "\" (expected zigzag, clockwise or anticlockwise)");
  }
  const auto d = rotated_surface_distance(code);
  if (!d) throw ConfigError("reference schedule \"" + kind + "\" needs a rotated surface code");
  const int di = static_cast<int>(*d);
  Schedule s;
  const auto plaqs = surface_plaquettes(di);
  for (std::size_t j = 0; j < plaqs.size(); ++j) {
    const auto corners = plaquette_corners(plaqs[j], di);
    const auto& order = plaqs[j].x_type ? x_order : z_order;
    for (int i = 0; i < 4; ++i) {
      if (corners[i] < 0) continue;
      s.assign({static_cast<std::size_t>(corners[i]), code.n + j,
                plaqs[j].x_type ? PauliOp::X : PauliOp::Z},
               order[i]);
    }
  }
  return s;
}

std::optional<std::size_t> brute_force_distance(const StabilizerCode& c, std::size_t w_max) {
  if (c.r() > 64) throw ConfigError("brute_force_distance supports at most 64 stabilizers");
  double total = 0;
  double binom = 1;
  for (std::size_t w = 1; w <= w_max && w <= c.n; ++w) {
    binom = binom * static_cast<double>(c.n - w + 1) / static_cast<double>(w);
    total += binom * std::pow(3.0, static_cast<double>(w));
  }
  if (total > 1e8) throw ConfigError("brute_force_distance: enumeration exceeds 1e8 candidates");

  // Syndrome mask of each single-qubit Pauli (index 3q + letter - 1).
  std::vector<std::uint64_t> col(3 * c.n, 0);
  for (std::size_t q = 0; q < c.n; ++q) {
    for (unsigned l = 1; l <= 3; ++l) {
      const auto e = PauliString::single(c.n, q, static_cast<PauliOp>(l));
      col[3 * q + l - 1] = syndrome(e, c.stabilizers).low_bits();
    }
  }
  gf2::Basis basis(2 * c.n);
  for (const auto& s : c.stabilizers) basis.insert(symplectic_row(s));

  PauliString cur(c.n);
  bool found = false;
  auto rec = [&](auto&& self, std::size_t start, std::size_t left, std::uint64_t syn) -> void {
    if (found) return;
    if (left == 0) {
      if (syn == 0 && !basis.in_span(symplectic_row(cur))) found = true;
      return;
    }
    for (std::size_t q = start; q + left <= c.n; ++q) {
      for (unsigned l = 1; l <= 3; ++l) {
        cur.set(q, static_cast<PauliOp>(l));
        self(self, q + 1, left - 1, syn ^ col[3 * q + l - 1]);
        cur.set(q, PauliOp::I);
        if (found) return;
      }
    }
  };
  for (std::size_t w = 1; w <= w_max && w <= c.n; ++w) {
    rec(rec, 0, w, 0);
    if (found) return w;
  }
  return std::nullopt;
}

}  // namespace asyn
