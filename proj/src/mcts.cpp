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

#include "asyn/mcts.hpp"

#include <stdexcept>

#include <json.hpp>

#include "asyn/errors.hpp"

namespace asyn {

namespace {

std::uint64_t derive_seed(std::uint64_t master, std::size_t partition, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(partition), tag};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[1]} << 32) | out[0];
}

std::string schedule_key(const Schedule& s) {
  std::string key;
  key.reserve(s.size() * 12);
  for (const auto& [c, t] : s.assignments()) {
    for (auto v : {c.data, c.ancilla, t}) {
      key.append(reinterpret_cast<const char*>(&v), 4);
    }
    key.push_back(static_cast<char>(c.basis));
  }
  return key;
}

double mean(const SearchNode& node) { return node.n ? node.E / static_cast<double>(node.n) : 0.0; }

void iterate(SearchNode& root, double c, const Evaluator& evaluator, std::mt19937_64& rng) {
  std::vector<SearchNode*> path{&root};
  SearchNode* node = &root;
  while (node->untried.empty() && !node->children.empty()) {
    std::size_t pick = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < node->children.size(); ++i) {
      const double u = uct_value(*node->children[i].second, node->n, c);
      if (u > best) {
        best = u;
        pick = i;
      }
    }
    node = node->children[pick].second.get();
    path.push_back(node);
  }
  if (!node->untried.empty()) {
    const std::size_t k = rng() % node->untried.size();
    const Move m = node->untried[k];
    node->untried.erase(node->untried.begin() + static_cast<std::ptrdiff_t>(k));
    node->children.emplace_back(m, std::make_unique<SearchNode>(apply_move(node->state, m)));
    node = node->children.back().second.get();
    path.push_back(node);
  }
  PartitionState state = node->state;
  while (!state.complete()) {
    const auto ms = moves(state);
    state = apply_move(state, ms[rng() % ms.size()]);
  }
  const double score = evaluator(state);
  for (auto* p : path) {
    p->E += score;
    ++p->n;
  }
}

}  // namespace

void validate_search_config(const SearchConfig& config) {
  if (!(config.c >= 0)) throw ConfigError("exploration constant must be non-negative");
  if (config.iters_per_step == 0) throw ConfigError("iterations per step must be positive");
  if (config.eval_shots == 0) throw ConfigError("evaluation shots must be positive");
  if (config.eval_cache_capacity == 0) throw ConfigError("evaluation cache capacity must be positive");
}

std::vector<Move> moves(const PartitionState& state) {
  std::vector<Move> out;
  for (const auto& c : *state.checks) {
    if (!state.schedule.contains(c)) out.push_back({c, min_feasible_tick(state.schedule, c)});
  }
  return out;
}

PartitionState apply_move(const PartitionState& state, const Move& move) {
  PartitionState next = state;
  next.schedule.assign(move.check, move.tick);
  return next;
}

SearchNode::SearchNode(PartitionState s) : state(std::move(s)) { untried = moves(state); }

double uct_value(const SearchNode& child, std::uint64_t parent_visits, double c) {
  if (child.n == 0 || parent_visits == 0) throw std::invalid_argument("uct_value needs visited nodes");
  const double n = static_cast<double>(child.n);
  return child.E / n + c * std::sqrt(std::log(static_cast<double>(parent_visits)) / n);
}

std::size_t search_step(SearchNode& root, const SearchConfig& config, const Evaluator& evaluator,
                        std::mt19937_64& rng) {
  if (root.terminal()) throw std::invalid_argument("search_step called on a terminal node");
  do {
    iterate(root, config.c, evaluator, rng);
  } while (root.n < config.iters_per_step);
  std::size_t pick = 0;
  for (std::size_t i = 1; i < root.children.size(); ++i) {
    const double a = mean(*root.children[i].second);
    const double b = mean(*root.children[pick].second);
    if (a > b || (a == b && root.children[i].first.check < root.children[pick].first.check)) pick = i;
  }
  return pick;
}

std::unique_ptr<SearchNode> advance(SearchNode& root, std::size_t index) {
  if (index >= root.children.size()) throw std::out_of_range("advance: no such child");
  return std::move(root.children[index].second);
}

// ---------------------------------------------------------------------------

TerminalEvaluator::TerminalEvaluator(const StabilizerCode& code, const NoiseModel& noise, DecodeCache& cache,
                                     const SearchConfig& config)
    : code_(code), noise_(noise), cache_(cache), config_(config) {}

void TerminalEvaluator::set_context(Schedule prefix, std::size_t prefix_depth, std::vector<Schedule> placeholders,
                                    std::uint64_t seed) {
  prefix_ = std::move(prefix);
  prefix_depth_ = prefix_depth;
  placeholders_ = std::move(placeholders);
  seed_ = seed;
  lru_.clear();
  index_.clear();
  best_score_ = -1;
  best_terminal_ = Schedule();
}

Schedule TerminalEvaluator::assemble(const Schedule& terminal) const {
  Schedule full = prefix_;
  full.append_shifted(terminal, prefix_depth_);
  std::size_t offset = prefix_depth_ + terminal.depth();
  for (const auto& p : placeholders_) {
    full.append_shifted(p, offset);
    offset += p.depth();
  }
  return full;
}

EvalResult TerminalEvaluator::evaluate_result(const Schedule& terminal) {
  const Circuit circuit = build_circuit(code_, assemble(terminal));
  SimOptions opts;
  opts.shots = config_.eval_shots;
  opts.seed = seed_;
  opts.threads = config_.threads;
  return estimate_logical_error(code_, circuit, noise_, cache_, opts);
}

double TerminalEvaluator::operator()(const PartitionState& state) {
  std::string key = schedule_key(state.schedule);
  if (auto it = index_.find(key); it != index_.end()) {
    ++hits_;
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->second;
  }
  const double score = evaluate_result(state.schedule).score;
  ++evaluations_;
  if (score > best_score_) {
    best_score_ = score;
    best_terminal_ = state.schedule;
  }
  lru_.emplace_front(key, score);
  index_.emplace(std::move(key), lru_.begin());
  if (lru_.size() > config_.eval_cache_capacity) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
  return score;
}

// ---------------------------------------------------------------------------

SearchResult continuous_search(const StabilizerCode& code, const PartitionSet& partitions, const SearchConfig& config,
                               const NoiseModel& noise, const Decoder& decoder, std::ostream* log) {
  validate_search_config(config);
  DecodeCache cache(code, decoder);
  TerminalEvaluator evaluator(code, noise, cache, config);
  const Evaluator eval = [&evaluator](const PartitionState& s) { return evaluator(s); };

  std::vector<Schedule> placeholders;
  for (const auto& g : partitions.groups) placeholders.push_back(greedy_schedule_checks(code, checks_of(code, g)));

  SearchResult result;
  std::size_t offset = 0;
  for (std::size_t p = 0; p < partitions.groups.size(); ++p) {
    auto checks = std::make_shared<const std::vector<PauliCheck>>(checks_of(code, partitions.groups[p]));
    evaluator.set_context(result.schedule, offset,
                          std::vector<Schedule>(placeholders.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                                                placeholders.end()),
                          derive_seed(config.master_seed, p, 0));
    std::mt19937_64 rng(derive_seed(config.master_seed, p, 1));

    auto root = std::make_unique<SearchNode>(PartitionState{checks, Schedule()});
    for (std::size_t step = 0; !root->state.complete(); ++step) {
      const std::size_t idx = search_step(*root, config, eval, rng);
      const Move m = root->children[idx].first;
      if (log) {
        nlohmann::ordered_json j;
        j["partition"] = p;
        j["step"] = step;
        j["chosen_move"] = {{"data", m.check.data},
                            {"ancilla", m.check.ancilla},
                            {"basis", std::string(1, pauli_char(m.check.basis))},
                            {"tick", m.tick}};
        j["root_visits"] = root->n;
        j["best_score"] = mean(*root->children[idx].second);
        *log << j.dump() << "\n";
      }
      root = advance(*root, idx);
    }

    PartitionOutcome out;
    out.schedule = root->state.schedule;
    out.walked_score = evaluator(root->state);
    out.best_seen_score = evaluator.best_score();
    if (out.best_seen_score > out.walked_score) {
      out.schedule = evaluator.best_terminal();
      out.used_best_seen = true;
    }
    if (log) {
      nlohmann::ordered_json j;
      j["partition"] = p;
      j["walked_score"] = out.walked_score;
      j["best_seen_score"] = out.best_seen_score;
      j["used_best_seen"] = out.used_best_seen;
      *log << j.dump() << "\n";
    }
    result.schedule.append_shifted(out.schedule, offset);
    offset += out.schedule.depth();
    result.partitions.push_back(std::move(out));
  }
  result.evaluations = evaluator.evaluations();
  result.cache_hits = evaluator.cache_hits();
  return result;
}

}  // namespace asyn
