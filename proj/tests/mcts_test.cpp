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

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "asyn/code.hpp"
#include "asyn/decode.hpp"
#include "asyn/errors.hpp"
#include "asyn/mcts.hpp"
#include "asyn/schedule.hpp"

namespace asyn {
namespace {

const std::string kData = ASYN_DATA_DIR;

StabilizerCode fixture(const std::string& name) { return load_code(kData + "/codes/" + name + ".json"); }

PartitionState fresh_state(const StabilizerCode& c, const std::vector<std::size_t>& group) {
  return {std::make_shared<const std::vector<PauliCheck>>(checks_of(c, group)), Schedule()};
}

TEST(Uct, Arithmetic) {
  SearchNode child(PartitionState{std::make_shared<const std::vector<PauliCheck>>(), Schedule()});
  child.E = 10;
  child.n = 5;
  EXPECT_NEAR(uct_value(child, 100, std::sqrt(2.0)), 2 + std::sqrt(2 * std::log(100.0) / 5), 1e-12);
  EXPECT_NEAR(uct_value(child, 100, std::sqrt(2.0)), 3.357, 1e-3);
  EXPECT_DOUBLE_EQ(uct_value(child, 100, 0), 2.0);
  child.n = 0;
  EXPECT_THROW(uct_value(child, 100, 1), std::invalid_argument);
}

TEST(Moves, FreshSteanePartitionOffersEveryCheckAtTickOne) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto parts = partition_stabilizers(c, 0);
  const auto state = fresh_state(c, parts.groups[0]);
  const auto ms = moves(state);
  EXPECT_EQ(ms.size(), 12u);
  for (const auto& m : ms) EXPECT_EQ(m.tick, 1u);
}

TEST(Moves, ApplyRaisesSharedQubitTicks) {
  const auto c = fixture("hexagonal_7_1_3");
  auto state = fresh_state(c, {0});
  const auto first = moves(state)[0];
  state = apply_move(state, first);
  for (const auto& m : moves(state)) EXPECT_EQ(m.tick, 2u);
  EXPECT_EQ(moves(state).size(), 3u);
}

TEST(Search, PrefersBetterMoveOnTwoMoveToy) {
  StabilizerCode c;
  c.n = 2;
  c.stabilizers = {PauliString::parse("ZZ")};
  SearchNode root(fresh_state(c, {0}));
  ASSERT_EQ(root.untried.size(), 2u);
  const PauliCheck a = (*root.state.checks)[0];
  const Evaluator eval = [&](const PartitionState& s) { return s.schedule.tick_of(a) == 1 ? 1.0 : 0.0; };
  SearchConfig cfg;
  cfg.iters_per_step = 50;
  std::mt19937_64 rng(0);
  const std::size_t idx = search_step(root, cfg, eval, rng);
  EXPECT_EQ(root.children[idx].first.check, a);
  EXPECT_EQ(root.n, 50u);
}

TEST(Search, BackpropKeepsVisitSums) {
  const auto c = fixture("hexagonal_7_1_3");
  SearchNode root(fresh_state(c, {0, 1}));
  std::mt19937_64 scores(9);
  const Evaluator eval = [&](const PartitionState&) { return static_cast<double>(scores() % 100); };
  SearchConfig cfg;
  cfg.iters_per_step = 200;
  std::mt19937_64 rng(1);
  search_step(root, cfg, eval, rng);
  std::uint64_t n = 0;
  double E = 0;
  for (const auto& [m, child] : root.children) {
    n += child->n;
    E += child->E;
  }
  EXPECT_EQ(n, root.n);
  EXPECT_DOUBLE_EQ(E, root.E);
}

TEST(Search, SingleIterationStillCompletes) {
  const auto c = fixture("hexagonal_7_1_3");
  auto root = std::make_unique<SearchNode>(fresh_state(c, {0}));
  const Evaluator eval = [](const PartitionState& s) { return static_cast<double>(s.schedule.depth()); };
  SearchConfig cfg;
  cfg.iters_per_step = 1;
  std::mt19937_64 rng(2);
  while (!root->state.complete()) root = advance(*root, search_step(*root, cfg, eval, rng));
  EXPECT_EQ(root->state.schedule.size(), 4u);
  EXPECT_THROW(search_step(*root, cfg, eval, rng), std::invalid_argument);
}

TEST(Search, SubtreeReuseKeepsStatistics) {
  const auto c = fixture("hexagonal_7_1_3");
  SearchNode root(fresh_state(c, {0}));
  const Evaluator eval = [](const PartitionState&) { return 1.0; };
  SearchConfig cfg;
  cfg.iters_per_step = 30;
  std::mt19937_64 rng(3);
  const std::size_t idx = search_step(root, cfg, eval, rng);
  const std::uint64_t n = root.children[idx].second->n;
  auto next = advance(root, idx);
  EXPECT_EQ(next->n, n);
  EXPECT_THROW(advance(root, 99), std::out_of_range);
}

TEST(Search, ConfigValidation) {
  SearchConfig cfg;
  cfg.c = -1;
  EXPECT_THROW(validate_search_config(cfg), ConfigError);
  cfg = SearchConfig();
  cfg.iters_per_step = 0;
  EXPECT_THROW(validate_search_config(cfg), ConfigError);
  cfg = SearchConfig();
  cfg.eval_shots = 0;
  EXPECT_THROW(validate_search_config(cfg), ConfigError);
}

TEST(TerminalEvaluator, CachesRepeatedTerminals) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  DecodeCache cache(c, *dec);
  SearchConfig cfg;
  cfg.eval_shots = 640;
  const NoiseModel noise;
  TerminalEvaluator ev(c, noise, cache, cfg);
  const auto parts = partition_stabilizers(c, 0);
  ev.set_context(Schedule(), 0, {greedy_schedule_checks(c, checks_of(c, parts.groups[1]))}, 4);
  PartitionState s = fresh_state(c, parts.groups[0]);
  while (!s.complete()) s = apply_move(s, moves(s)[0]);
  const double a = ev(s);
  const double b = ev(s);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ev.evaluations(), 1u);
  EXPECT_EQ(ev.cache_hits(), 1u);
  EXPECT_EQ(ev.best_score(), a);
  EXPECT_TRUE(validate_schedule(c, ev.assemble(s.schedule)).valid());
}

SearchResult small_search(const StabilizerCode& c, std::uint64_t seed, double cexp, unsigned threads,
                          std::ostream* log = nullptr) {
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  SearchConfig cfg;
  cfg.iters_per_step = 20;
  cfg.eval_shots = 640;
  cfg.master_seed = seed;
  cfg.c = cexp;
  cfg.threads = threads;
  return continuous_search(c, partition_stabilizers(c, seed), cfg, NoiseModel{}, *dec, log);
}

TEST(ContinuousSearch, ProducesValidScheduleAndLog) {
  const auto c = fixture("hexagonal_7_1_3");
  std::ostringstream log;
  const auto r = small_search(c, 1, std::sqrt(2.0), 1, &log);
  EXPECT_TRUE(validate_schedule(c, r.schedule).valid());
  EXPECT_EQ(r.partitions.size(), 2u);
  std::istringstream in(log.str());
  std::string line;
  std::size_t steps = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("step")) {
      ++steps;
      EXPECT_TRUE(j.contains("chosen_move"));
      EXPECT_GE(j.at("root_visits").get<std::uint64_t>(), 20u);
    }
  }
  EXPECT_EQ(steps, 24u);
}

TEST(ContinuousSearch, ReproducibleForSeedAndThreads) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto a = small_search(c, 5, std::sqrt(2.0), 1);
  const auto b = small_search(c, 5, std::sqrt(2.0), 1);
  const auto t = small_search(c, 5, std::sqrt(2.0), 2);
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_EQ(a.schedule, t.schedule);
  EXPECT_EQ(a.evaluations, t.evaluations);
}

TEST(ContinuousSearch, GreedyExplorationIsDeterministic) {
  const auto c = fixture("hexagonal_7_1_3");
  EXPECT_EQ(small_search(c, 2, 0, 1).schedule, small_search(c, 2, 0, 1).schedule);
}

}  // namespace
}  // namespace asyn
