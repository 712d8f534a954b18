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

#ifndef ASYN_SCHEDULE_HPP
#define ASYN_SCHEDULE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "asyn/code.hpp"
#include "asyn/pauli.hpp"

namespace asyn {

/// Check -> tick assignment. Ticks start at 1.
class Schedule {
 public:
  Schedule() = default;

  void assign(const PauliCheck& check, std::size_t tick);
  bool contains(const PauliCheck& check) const { return ticks_.count(check) != 0; }
  std::size_t tick_of(const PauliCheck& check) const;
  std::size_t size() const { return ticks_.size(); }
  std::size_t depth() const;
  const std::map<PauliCheck, std::size_t>& assignments() const { return ticks_; }

  /// Shifts every tick by `offset` and merges into this schedule.
  void append_shifted(const Schedule& other, std::size_t offset);

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::map<PauliCheck, std::size_t> ticks_;
};

struct PartitionSet {
  std::vector<std::vector<std::size_t>> groups;
};

/// Greedy partition into groups of pairwise compatible stabilizers, each group
/// grown from a randomly picked seed. Candidates sharing the seed's letter
/// signature are tried first, in index order.
PartitionSet partition_stabilizers(const StabilizerCode& code, std::uint64_t seed);

/// True when the two stabilizers agree letter-by-letter on their overlap.
bool compatible(const PauliString& a, const PauliString& b);

/// max tick of assigned checks sharing a qubit with `check`, plus one.
std::size_t min_feasible_tick(const Schedule& partial, const PauliCheck& check);

struct ScheduleReport {
  std::vector<std::string> conflicts;
  // Stabilizer pairs whose anticommuting overlaps have a non-positive product
  // of tick differences.
  std::vector<std::string> ordering_violations;

  bool conflict_free() const { return conflicts.empty(); }
  bool valid() const { return conflicts.empty() && ordering_violations.empty(); }
};

/// Throws ConfigError if the schedule is incomplete or names foreign checks.
ScheduleReport validate_schedule(const StabilizerCode& code, const Schedule& schedule);

Schedule lexical_schedule(const StabilizerCode& code);

/// Earliest-first list scheduling over the given checks. A check on qubit q of
/// a stabilizer waits for the checks on q of anticommuting-overlap stabilizers
/// in earlier partitions, which keeps the ordering constraint satisfied.
Schedule greedy_lowest_depth(const StabilizerCode& code);
Schedule greedy_schedule_checks(const StabilizerCode& code, const std::vector<PauliCheck>& checks);

struct OptimalResult {
  Schedule schedule;
  bool proven_optimal = false;
  std::size_t lower_bound = 0;
};

/// Exact lowest-depth search. time_budget_s must be positive.
OptimalResult optimal_lowest_depth(const StabilizerCode& code, double time_budget_s);

std::string schedule_to_json(const Schedule& schedule);
/// Parses and checks the schedule covers exactly the code's checks.
Schedule parse_schedule(const std::string& json_text, const StabilizerCode& code);
Schedule load_schedule(const std::string& path, const StabilizerCode& code);
void write_schedule(const Schedule& schedule, const std::string& path);

/// Checks of the given stabilizers, in (ancilla, data) order.
std::vector<PauliCheck> checks_of(const StabilizerCode& code, const std::vector<std::size_t>& stabs);

}  // namespace asyn

#endif  // ASYN_SCHEDULE_HPP
