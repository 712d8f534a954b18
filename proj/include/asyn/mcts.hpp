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

#ifndef ASYN_MCTS_HPP
#define ASYN_MCTS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "asyn/code.hpp"
#include "asyn/decode.hpp"
#include "asyn/noise.hpp"
#include "asyn/schedule.hpp"
#include "asyn/sim.hpp"

namespace asyn {

struct SearchConfig {
  double c = std::sqrt(2.0);
  std::uint64_t iters_per_step = 4000;
  std::uint64_t eval_shots = 10000;
  std::uint64_t master_seed = 0;
  std::size_t eval_cache_capacity = 100000;
  unsigned threads = 1;
};

/// Throws ConfigError on a negative c or zero iters/shots/capacity.
void validate_search_config(const SearchConfig& config);

struct Move {
  PauliCheck check;
  std::size_t tick = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

/// Search state restricted to one partition: the partition's checks and the
/// partition-local schedule built so far.
struct PartitionState {
  std::shared_ptr<const std::vector<PauliCheck>> checks;  // (ancilla, data) order
  Schedule schedule;

  bool complete() const { return schedule.size() == checks->size(); }
};

/// One move per unassigned check at its minimum feasible tick, in check order.
std::vector<Move> moves(const PartitionState& state);
PartitionState apply_move(const PartitionState& state, const Move& move);

struct SearchNode {
  PartitionState state;
  double E = 0;
  std::uint64_t n = 0;
  std::vector<std::pair<Move, std::unique_ptr<SearchNode>>> children;
  std::vector<Move> untried;

  explicit SearchNode(PartitionState s);
  bool terminal() const { return untried.empty() && children.empty(); }
};

/// E/n + c sqrt(ln N / n). Requires child.n >= 1 and parent_visits >= 1.
double uct_value(const SearchNode& child, std::uint64_t parent_visits, double c);

/// Scores a complete partition state; higher is better.
using Evaluator = std::function<double(const PartitionState&)>;

/// Runs UCT iterations until root.n reaches config.iters_per_step (at least
/// one) and returns the index into root.children of the child with the
/// highest mean score. Ties go to the smaller check.
std::size_t search_step(SearchNode& root, const SearchConfig& config, const Evaluator& evaluator,
                        std::mt19937_64& rng);

/// Detaches root.children[index] as the new root. Its statistics are kept.
std::unique_ptr<SearchNode> advance(SearchNode& root, std::size_t index);

/// Scores partition terminals by simulating the whole round: frozen earlier
/// partitions, the terminal, then greedy placeholders for later partitions.
/// Results are cached by assignment list (LRU).
class TerminalEvaluator {
 public:
  TerminalEvaluator(const StabilizerCode& code, const NoiseModel& noise, DecodeCache& cache,
                    const SearchConfig& config);

  /// Sets the frozen prefix (already offset), the placeholders that follow
  /// the terminal, and the common evaluation seed. Clears the score cache.
  void set_context(Schedule prefix, std::size_t prefix_depth, std::vector<Schedule> placeholders,
                   std::uint64_t seed);

  /// Full-round schedule for a complete partition state.
  Schedule assemble(const Schedule& terminal) const;
  EvalResult evaluate_result(const Schedule& terminal);
  double operator()(const PartitionState& state);

  std::uint64_t evaluations() const { return evaluations_; }
  std::uint64_t cache_hits() const { return hits_; }
  /// Highest-scoring terminal since the last set_context.
  double best_score() const { return best_score_; }
  const Schedule& best_terminal() const { return best_terminal_; }

 private:
  const StabilizerCode& code_;
  const NoiseModel& noise_;
  DecodeCache& cache_;
  SearchConfig config_;
  Schedule prefix_;
  std::size_t prefix_depth_ = 0;
  std::vector<Schedule> placeholders_;
  std::uint64_t seed_ = 0;
  std::list<std::pair<std::string, double>> lru_;
  std::unordered_map<std::string, std::list<std::pair<std::string, double>>::iterator> index_;
  std::uint64_t evaluations_ = 0;
  std::uint64_t hits_ = 0;
  double best_score_ = -1;
  Schedule best_terminal_;
};

struct PartitionOutcome {
  Schedule schedule;  // partition-local ticks
  double walked_score = 0;
  double best_seen_score = 0;
  bool used_best_seen = false;
};

struct SearchResult {
  Schedule schedule;
  std::vector<PartitionOutcome> partitions;
  std::uint64_t evaluations = 0;
  std::uint64_t cache_hits = 0;
};

/// MCTS over each partition in order with subtree reuse between steps. Each
/// partition keeps the better of the walked terminal and the best terminal
/// evaluated during its search. When `log` is set, one JSON object per step
/// is written to it.
SearchResult continuous_search(const StabilizerCode& code, const PartitionSet& partitions, const SearchConfig& config,
                               const NoiseModel& noise, const Decoder& decoder, std::ostream* log = nullptr);

}  // namespace asyn

#endif  // ASYN_MCTS_HPP
