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

#include "asyn/schedule.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "asyn/errors.hpp"

namespace asyn {

void Schedule::assign(const PauliCheck& check, std::size_t tick) {
  if (tick == 0) throw std::invalid_argument("ticks start at 1");
  if (!ticks_.emplace(check, tick).second) {
    throw std::invalid_argument("check (" + std::to_string(check.data) + ", " +
                                std::to_string(check.ancilla) + ") is already assigned");
  }
}

std::size_t Schedule::tick_of(const PauliCheck& check) const {
  auto it = ticks_.find(check);
  if (it == ticks_.end()) throw std::out_of_range("check not in schedule");
  return it->second;
}

std::size_t Schedule::depth() const {
  std::size_t d = 0;
  for (const auto& [c, t] : ticks_) d = std::max(d, t);
  return d;
}

void Schedule::append_shifted(const Schedule& other, std::size_t offset) {
  for (const auto& [c, t] : other.ticks_) assign(c, t + offset);
}

bool compatible(const PauliString& a, const PauliString& b) {
  for (std::size_t q = 0; q < a.n(); ++q) {
    const PauliOp pa = a.at(q);
    const PauliOp pb = b.at(q);
    if (pa != PauliOp::I && pb != PauliOp::I && pa != pb) return false;
  }
  return true;
}

namespace {

unsigned letter_signature(const PauliString& s) {
  unsigned sig = 0;
  for (std::size_t q = 0; q < s.n(); ++q) sig |= 1u << static_cast<unsigned>(s.at(q));
  return sig & ~1u;
}

}  // namespace

PartitionSet partition_stabilizers(const StabilizerCode& code, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> remaining(code.r());
  for (std::size_t i = 0; i < code.r(); ++i) remaining[i] = i;
  PartitionSet out;
  while (!remaining.empty()) {
    const std::size_t pick = static_cast<std::size_t>(rng() % remaining.size());
    const std::size_t s0 = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    const unsigned sig = letter_signature(code.stabilizers[s0]);
    std::vector<std::size_t> order;
    for (auto s : remaining) {
      if (letter_signature(code.stabilizers[s]) == sig) order.push_back(s);
    }
    for (auto s : remaining) {
      if (letter_signature(code.stabilizers[s]) != sig) order.push_back(s);
    }
    std::vector<std::size_t> group{s0};
    for (auto s : order) {
      bool ok = true;
      for (auto m : group) {
        if (!compatible(code.stabilizers[s], code.stabilizers[m])) {
          ok = false;
          break;
        }
      }
      if (ok) group.push_back(s);
    }
    std::sort(group.begin(), group.end());
    std::erase_if(remaining, [&](std::size_t s) { return std::binary_search(group.begin(), group.end(), s); });
    out.groups.push_back(std::move(group));
  }
  std::sort(out.groups.begin(), out.groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::size_t min_feasible_tick(const Schedule& partial, const PauliCheck& check) {
  if (partial.contains(check)) throw std::invalid_argument("check is already assigned");
  std::size_t t_max = 0;
  for (const auto& [c, t] : partial.assignments()) {
    if (c.data == check.data || c.ancilla == check.ancilla) t_max = std::max(t_max, t);
  }
  return t_max + 1;
}

std::vector<PauliCheck> checks_of(const StabilizerCode& code, const std::vector<std::size_t>& stabs) {
  std::vector<PauliCheck> out;
  std::vector<std::size_t> sorted = stabs;
  std::sort(sorted.begin(), sorted.end());
  for (auto j : sorted) {
    const auto& s = code.stabilizers[j];
    for (std::size_t q = 0; q < code.n; ++q) {
      const PauliOp p = s.at(q);
      if (p == PauliOp::I) continue;
      if (p == PauliOp::Y) throw ConfigError("stabilizer " + std::to_string(j) + " has a Y entry");
      out.push_back({q, code.n + j, p});
    }
  }
  return out;
}

namespace {

std::string check_str(const PauliCheck& c) {
  return "(q" + std::to_string(c.data) + ", a" + std::to_string(c.ancilla) + ", " + pauli_char(c.basis) + ")";
}

}  // namespace

ScheduleReport validate_schedule(const StabilizerCode& code, const Schedule& schedule) {
  const auto expected = derive_checks(code).checks;
  for (const auto& c : expected) {
    if (!schedule.contains(c)) throw ConfigError("schedule is incomplete: missing " + check_str(c));
  }
  if (schedule.size() != expected.size()) {
    throw ConfigError("schedule contains checks that do not belong to the code");
  }
  ScheduleReport rep;
  std::map<std::pair<std::size_t, std::size_t>, PauliCheck> seen;  // (tick, qubit)
  for (const auto& [c, t] : schedule.assignments()) {
    for (std::size_t q : {c.data, c.ancilla}) {
      auto [it, fresh] = seen.emplace(std::make_pair(t, q), c);
      if (!fresh) {
        rep.conflicts.push_back("tick " + std::to_string(t) + ": qubit " + std::to_string(q) + " used by " +
                                check_str(it->second) + " and " + check_str(c));
      }
    }
  }
  for (std::size_t i = 0; i < code.r(); ++i) {
    for (std::size_t j = i + 1; j < code.r(); ++j) {
      const auto& a = code.stabilizers[i];
      const auto& b = code.stabilizers[j];
      int sign = 1;
      bool any = false;
      for (std::size_t q = 0; q < code.n; ++q) {
        const PauliOp pa = a.at(q);
        const PauliOp pb = b.at(q);
        if (pa == PauliOp::I || pb == PauliOp::I || pa == pb) continue;
        any = true;
        const auto ta = schedule.tick_of({q, code.n + i, pa});
        const auto tb = schedule.tick_of({q, code.n + j, pb});
        if (ta == tb) {
          sign = 0;
        } else if (ta < tb) {
          sign = -sign;
        }
      }
      if (any && sign <= 0) {
        rep.ordering_violations.push_back("stabilizers " + std::to_string(i) + " and " + std::to_string(j) +
                                          ": product of tick differences is not positive");
      }
    }
  }
  return rep;
}

Schedule lexical_schedule(const StabilizerCode& code) {
  std::vector<std::size_t> last(code.n + code.r(), 0);
  Schedule s;
  for (const auto& c : derive_checks(code).checks) {
    const std::size_t t = std::max(last[c.data], last[c.ancilla]) + 1;
    s.assign(c, t);
    last[c.data] = last[c.ancilla] = t;
  }
  return s;
}

Schedule greedy_schedule_checks(const StabilizerCode& code, const std::vector<PauliCheck>& checks) {
  const auto parts = partition_stabilizers(code, 0);
  std::vector<std::size_t> part_of(code.r(), 0);
  for (std::size_t p = 0; p < parts.groups.size(); ++p) {
    for (auto s : parts.groups[p]) part_of[s] = p;
  }
  const std::size_t m = checks.size();
  // pred[i]: checks on the same data qubit with a different letter from an
  // earlier partition.
  std::vector<std::vector<std::size_t>> pred(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (checks[i].data != checks[j].data || checks[i].basis == checks[j].basis) continue;
      if (part_of[checks[j].ancilla - code.n] < part_of[checks[i].ancilla - code.n]) pred[i].push_back(j);
    }
  }
  std::vector<std::size_t> last(code.n + code.r(), 0);
  std::vector<bool> placed(m, false);
  Schedule s;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = m;
    std::size_t best_t = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (auto j : pred[i]) ready = ready && placed[j];
      if (!ready) continue;
      const std::size_t t = std::max(last[checks[i].data], last[checks[i].ancilla]) + 1;
      if (best == m || t < best_t ||
          (t == best_t && std::tie(checks[i].ancilla, checks[i].data) <
                              std::tie(checks[best].ancilla, checks[best].data))) {
        best = i;
        best_t = t;
      }
    }
    placed[best] = true;
    s.assign(checks[best], best_t);
    last[checks[best].data] = last[checks[best].ancilla] = best_t;
  }
  return s;
}

Schedule greedy_lowest_depth(const StabilizerCode& code) {
  return greedy_schedule_checks(code, derive_checks(code).checks);
}

namespace {

class DepthSearch {
 public:
  DepthSearch(const StabilizerCode& code, std::chrono::steady_clock::time_point deadline)
      : code_(code), deadline_(deadline) {
    checks_ = derive_checks(code).checks;
    const std::size_t m = checks_.size();
    const std::size_t nq = code.n + code.r();
    on_qubit_.resize(nq);
    for (std::size_t i = 0; i < m; ++i) {
      on_qubit_[checks_[i].data].push_back(i);
      on_qubit_[checks_[i].ancilla].push_back(i);
    }
    auto index_of = [&](std::size_t q, std::size_t stab) {
      for (auto i : on_qubit_[q]) {
        if (checks_[i].ancilla == code.n + stab) return i;
      }
      return m;
    };
    involved_.resize(m);
    for (std::size_t i = 0; i < code.r(); ++i) {
      for (std::size_t j = i + 1; j < code.r(); ++j) {
        Pair p;
        for (std::size_t q = 0; q < code.n; ++q) {
          const PauliOp a = code.stabilizers[i].at(q);
          const PauliOp b = code.stabilizers[j].at(q);
          if (a == PauliOp::I || b == PauliOp::I || a == b) continue;
          p.sides.push_back({index_of(q, i), index_of(q, j)});
        }
        if (p.sides.empty()) continue;
        for (std::size_t k = 0; k < p.sides.size(); ++k) {
          involved_[p.sides[k].first].push_back({pairs_.size(), k});
          involved_[p.sides[k].second].push_back({pairs_.size(), k});
        }
        pairs_.push_back(std::move(p));
      }
    }
    lower_bound_ = 0;
    for (const auto& v : on_qubit_) lower_bound_ = std::max(lower_bound_, v.size());
  }

  std::size_t lower_bound() const { return lower_bound_; }
  const std::vector<PauliCheck>& checks() const { return checks_; }
  bool timed_out() const { return timed_out_; }

  /// Finds a schedule of depth <= D. Empty optional on infeasible or timeout.
  std::optional<std::vector<std::size_t>> solve(std::size_t D) {
    if (D > 63) return std::nullopt;
    D_ = D;
    full_ = (std::uint64_t{1} << (D + 1)) - 2;  // bits 1..D
    tick_.assign(checks_.size(), 0);
    used_.assign(on_qubit_.size(), 0);
    if (dfs(0)) return tick_;
    return std::nullopt;
  }

 private:
  struct Pair {
    std::vector<std::pair<std::size_t, std::size_t>> sides;
  };

  std::uint64_t domain(std::size_t v) const {
    std::uint64_t dom = full_ & ~used_[checks_[v].data] & ~used_[checks_[v].ancilla];
    if (v == 0) {
      // Reversal symmetry: t -> D + 1 - t preserves every constraint.
      dom &= (std::uint64_t{1} << ((D_ + 1) / 2 + 1)) - 1;
    }
    for (const auto& [pid, k] : involved_[v]) {
      const auto& p = pairs_[pid];
      bool complete = true;
      unsigned parity = 0;
      for (std::size_t s = 0; s < p.sides.size() && complete; ++s) {
        if (s == k) continue;
        const auto ta = tick_[p.sides[s].first];
        const auto tb = tick_[p.sides[s].second];
        if (!ta || !tb) complete = false;
        parity ^= ta < tb ? 1u : 0u;
      }
      const auto [a, b] = p.sides[k];
      const std::size_t other = a == v ? b : a;
      if (!complete || !tick_[other]) continue;
      // Side k must contribute `parity` to keep the count of a<b even.
      const bool need_a_less = parity == 1;
      const bool v_less = a == v ? need_a_less : !need_a_less;
      const std::uint64_t below = (std::uint64_t{1} << tick_[other]) - 1;
      dom &= v_less ? below : ~below & ~(std::uint64_t{1} << tick_[other]);
    }
    return dom;
  }

  bool dfs(std::size_t assigned) {
    if (++nodes_ % 4096 == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    if (timed_out_) return false;
    if (assigned == checks_.size()) return true;
    // Pigeonhole per qubit.
    for (std::size_t q = 0; q < on_qubit_.size(); ++q) {
      std::size_t left = 0;
      for (auto i : on_qubit_[q]) left += tick_[i] == 0;
      if (left > static_cast<std::size_t>(std::popcount(full_ & ~used_[q]))) return false;
    }
    std::size_t best = checks_.size();
    std::uint64_t best_dom = 0;
    int best_size = 65;
    for (std::size_t v = 0; v < checks_.size(); ++v) {
      if (tick_[v]) continue;
      const auto dom = domain(v);
      const int sz = std::popcount(dom);
      if (sz == 0) return false;
      if (sz < best_size) {
        best = v;
        best_dom = dom;
        best_size = sz;
      }
    }
    const auto& c = checks_[best];
    while (best_dom) {
      const std::size_t t = static_cast<std::size_t>(std::countr_zero(best_dom));
      best_dom &= best_dom - 1;
      const std::uint64_t bit = std::uint64_t{1} << t;
      tick_[best] = t;
      used_[c.data] |= bit;
      used_[c.ancilla] |= bit;
      if (dfs(assigned + 1)) return true;
      used_[c.data] &= ~bit;
      used_[c.ancilla] &= ~bit;
      tick_[best] = 0;
      if (timed_out_) return false;
    }
    return false;
  }

  const StabilizerCode& code_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<PauliCheck> checks_;
  std::vector<std::vector<std::size_t>> on_qubit_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> involved_;
  std::size_t lower_bound_ = 0;
  std::size_t D_ = 0;
  std::uint64_t full_ = 0;
  std::vector<std::size_t> tick_;
  std::vector<std::uint64_t> used_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

OptimalResult optimal_lowest_depth(const StabilizerCode& code, double time_budget_s) {
  if (!(time_budget_s > 0)) throw ConfigError("optimal_lowest_depth: time budget must be positive");
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(time_budget_s));
  DepthSearch search(code, deadline);
  OptimalResult res;
  res.lower_bound = search.lower_bound();
  res.schedule = greedy_lowest_depth(code);
  const std::size_t ub = res.schedule.depth();
  for (std::size_t D = res.lower_bound; D < ub; ++D) {
    auto sol = search.solve(D);
    if (search.timed_out()) return res;
    if (sol) {
      Schedule s;
      for (std::size_t i = 0; i < sol->size(); ++i) s.assign(search.checks()[i], (*sol)[i]);
      res.schedule = std::move(s);
      res.proven_optimal = true;
      return res;
    }
  }
  res.proven_optimal = true;
  return res;
}

std::string schedule_to_json(const Schedule& schedule) {
  // Sorted by (tick, ancilla, data) for readability; stable across runs.
  std::vector<std::pair<std::size_t, PauliCheck>> rows;
  for (const auto& [c, t] : schedule.assignments()) rows.push_back({t, c});
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second.ancilla, a.second.data) < std::tie(b.first, b.second.ancilla, b.second.data);
  });
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [t, c] = rows[i];
    out += "  {\"data\": " + std::to_string(c.data) + ", \"ancilla\": " + std::to_string(c.ancilla) +
           ", \"basis\": \"" + pauli_char(c.basis) + "\", \"tick\": " + std::to_string(t) + "}";
    out += i + 1 < rows.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

Schedule parse_schedule(const std::string& text, const StabilizerCode& code) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid schedule JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("schedule file must be a JSON array");
  Schedule s;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("data") || !e.contains("ancilla") || !e.contains("basis") ||
        !e.contains("tick")) {
      throw ParseError("schedule entries need data, ancilla, basis and tick");
    }
    PauliCheck c;
    try {
      c.data = e.at("data").get<std::size_t>();
      c.ancilla = e.at("ancilla").get<std::size_t>();
      const auto b = e.at("basis").get<std::string>();
      if (b.size() != 1) throw ParseError("basis must be a single letter");
      c.basis = pauli_from_char(b[0]);
      const auto t = e.at("tick").get<std::size_t>();
      if (t == 0) throw ParseError("ticks start at 1");
      if (s.contains(c)) throw ParseError("duplicate check " + check_str(c));
      s.assign(c, t);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(std::string("bad schedule entry: ") + ex.what());
    }
  }
  const auto rep = validate_schedule(code, s);
  if (!rep.conflict_free()) throw ConfigError("schedule has qubit conflicts: " + rep.conflicts.front());
  return s;
}

Schedule load_schedule(const std::string& path, const StabilizerCode& code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_schedule(ss.str(), code);
}

void write_schedule(const Schedule& schedule, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << schedule_to_json(schedule);
}

}  // namespace asyn
