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

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <json.hpp>

#include "asyn/code.hpp"
#include "asyn/decode.hpp"
#include "asyn/errors.hpp"
#include "asyn/schedule.hpp"
#include "asyn/sim.hpp"

namespace asyn {
namespace {

const std::string kData = ASYN_DATA_DIR;

StabilizerCode fixture(const std::string& name) { return load_code(kData + "/codes/" + name + ".json"); }

// One ZZZZ stabilizer on four qubits with three logical qubits.
StabilizerCode zzzz_toy() {
  StabilizerCode c;
  c.family = "toy";
  c.n = 4;
  c.k = 3;
  c.d = 1;
  c.stabilizers = {PauliString::parse("ZZZZ")};
  c.logical_xs = {PauliString::parse("XXII"), PauliString::parse("XIXI"), PauliString::parse("XIIX")};
  c.logical_zs = {PauliString::parse("IZII"), PauliString::parse("IIZI"), PauliString::parse("IIIZ")};
  validate_code(c);
  return c;
}

Schedule ticks(const StabilizerCode& c, const std::vector<std::size_t>& t) {
  const auto checks = derive_checks(c).checks;
  Schedule s;
  for (std::size_t i = 0; i < checks.size(); ++i) s.assign(checks[i], t[i]);
  return s;
}

TEST(BuildCircuit, AncillaIdlesInsideItsWindow) {
  const auto c = zzzz_toy();
  const Circuit circ = build_circuit(c, ticks(c, {1, 2, 3, 5}));
  ASSERT_EQ(circ.depth(), 5u);
  const auto& t4 = circ.ticks[3];
  EXPECT_TRUE(t4.checks.empty());
  EXPECT_EQ(std::set<std::size_t>(t4.idle.begin(), t4.idle.end()), (std::set<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(circ.ticks[0].idle, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(BuildCircuit, TouchedPlusIdleCoversActiveQubits) {
  const auto c = fixture("hexagonal_7_1_3");
  const Circuit circ = build_circuit(c, lexical_schedule(c));
  for (const auto& t : circ.ticks) {
    std::set<std::size_t> seen(t.idle.begin(), t.idle.end());
    for (const auto& ch : t.checks) {
      EXPECT_TRUE(seen.insert(ch.data).second);
      EXPECT_TRUE(seen.insert(ch.ancilla).second);
    }
    for (std::size_t q = 0; q < c.n; ++q) EXPECT_TRUE(seen.count(q));
  }
}

TEST(BuildCircuit, RejectsInvalidSchedule) {
  const auto c = zzzz_toy();
  EXPECT_THROW(build_circuit(c, ticks(c, {1, 1, 2, 3})), ConfigError);
}

TEST(Propagation, AncillaZFaultAfterFirstCheckSpreads) {
  const auto c = zzzz_toy();
  const Circuit circ = build_circuit(c, ticks(c, {1, 2, 3, 4}));
  const auto locs = fault_locations(circ, NoiseModel::uniform(0.01));
  ASSERT_TRUE(locs[0].two_qubit);
  // Bit 3 is Z on the ancilla.
  EXPECT_EQ(propagate_faults(circ, locs, {{0, 8}}), PauliString::parse("IZZZ"));
  EXPECT_EQ(propagate_faults(circ, locs, {}), PauliString(4));
}

TEST(Propagation, FaultsOnLastCheckDoNotSpread) {
  const auto c = zzzz_toy();
  const Circuit circ = build_circuit(c, ticks(c, {1, 2, 3, 4}));
  const auto locs = fault_locations(circ, NoiseModel::uniform(0.01));
  std::size_t last = 0;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (locs[i].two_qubit) last = i;
  }
  EXPECT_EQ(propagate_faults(circ, locs, {{last, 8}}), PauliString(4));
  EXPECT_EQ(propagate_faults(circ, locs, {{last, 2}}), PauliString::parse("IIIZ"));
}

TEST(Sampling, ZeroNoiseLeavesNoResidual) {
  const auto c = fixture("hexagonal_7_1_3");
  const Circuit circ = build_circuit(c, lexical_schedule(c));
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_TRUE(sample_residual(circ, NoiseModel::zero(), s).is_identity());
}

TEST(Sampling, SeedDeterminesResidual) {
  const auto c = fixture("hexagonal_7_1_3");
  const Circuit circ = build_circuit(c, lexical_schedule(c));
  const NoiseModel noise = NoiseModel::uniform(0.2);
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_EQ(sample_residual(circ, noise, s), sample_residual(circ, noise, s));
}

TEST(Estimate, ZeroNoiseClampsScore) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  SimOptions o;
  o.shots = 1000;
  const auto r = estimate_logical_error(c, lexical_schedule(c), NoiseModel::zero(), *dec, o);
  EXPECT_EQ(r.p_x, 0.0);
  EXPECT_EQ(r.p_z, 0.0);
  EXPECT_EQ(r.overall, 0.0);
  EXPECT_EQ(r.score, 2000.0);
}

TEST(Estimate, IdenticalAcrossThreadCounts) {
  const auto c = fixture("rotated_surface_3");
  const auto dec = make_decoder("mwpm", build_decoding_model(c, NoiseModel{}));
  const auto sched = gen_reference_schedule(c, "clockwise");
  SimOptions o;
  o.shots = 5000;
  o.seed = 11;
  const auto a = estimate_logical_error(c, sched, NoiseModel{}, *dec, o);
  o.threads = 3;
  const auto b = estimate_logical_error(c, sched, NoiseModel{}, *dec, o);
  EXPECT_EQ(a.x_events, b.x_events);
  EXPECT_EQ(a.z_events, b.z_events);
  EXPECT_EQ(a.any_events, b.any_events);
  EXPECT_GT(a.any_events, 0u);
}

TEST(Estimate, ShotsNotMultipleOf64) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  SimOptions o;
  o.shots = 101;
  const auto r = estimate_logical_error(c, lexical_schedule(c), NoiseModel::uniform(0.5), *dec, o);
  EXPECT_EQ(r.shots, 101u);
  EXPECT_LE(r.any_events, 101u);
}

TEST(Estimate, MoreNoiseMoreErrors) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  const auto sched = lexical_schedule(c);
  SimOptions o;
  o.shots = 20000;
  const auto lo = estimate_logical_error(c, sched, NoiseModel::uniform(0.002), *dec, o);
  const auto hi = estimate_logical_error(c, sched, NoiseModel::uniform(0.004), *dec, o);
  EXPECT_GT(hi.overall + 3 * hi.stderr_overall, lo.overall);
}

TEST(Oracle, IdleOnlyToyMatchesHandCount) {
  // Only idle faults: each data qubit idles on three ticks. Z and Y leave a Z
  // that every decoder output keeps, and each such Z flips some logical X.
  const auto c = zzzz_toy();
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  const double p = 1e-3;
  const NoiseModel noise{0.0, p, 0.0, {}};
  const auto r = first_order_oracle(c, ticks(c, {1, 2, 3, 4}), noise, *dec);
  EXPECT_EQ(r.configurations, 36u + 4 * 15u);
  EXPECT_NEAR(r.p_z, 12 * (2 * p / 3) * std::pow(1 - p, 11), 1e-15);
  EXPECT_LE(r.p_x, 12 * (2 * p / 3) + 1e-15);
}

TEST(Oracle, ZeroNoiseGivesZero) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  const auto r = first_order_oracle(c, lexical_schedule(c), NoiseModel::zero(), *dec);
  EXPECT_EQ(r.p_x, 0.0);
  EXPECT_EQ(r.p_z, 0.0);
}

TEST(Oracle, GuardThrows) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  EXPECT_THROW(first_order_oracle(c, lexical_schedule(c), NoiseModel{}, *dec, 10), ConfigError);
}

TEST(Oracle, AgreesWithMonteCarloAtSmallRate) {
  const auto c = fixture("hexagonal_7_1_3");
  const auto dec = ml_lookup_decoder(build_decoding_model(c));
  const auto sched = greedy_lowest_depth(c);
  const NoiseModel noise = NoiseModel::uniform(5e-4);
  const auto oracle = first_order_oracle(c, sched, noise, *dec);
  SimOptions o;
  o.shots = 200000;
  o.seed = 5;
  const auto mc = estimate_logical_error(c, sched, noise, *dec, o);
  EXPECT_NEAR(mc.p_x, oracle.p_x, 4 * std::sqrt(oracle.p_x / 200000) + 1e-5);
  EXPECT_NEAR(mc.p_z, oracle.p_z, 4 * std::sqrt(oracle.p_z / 200000) + 1e-5);
}

TEST(Spacetime, PublishedRows) {
  const auto a = spacetime_report(14, 7, 6);
  EXPECT_DOUBLE_EQ(a.t_round_ns, 12400.0);
  EXPECT_NEAR(a.t_round_units, 12.4, 1e-12);
  EXPECT_EQ(a.physical_qubits, 13u);
  EXPECT_NEAR(spacetime_report(15, 61, 60).t_round_units, 13.0, 1e-12);
  EXPECT_DOUBLE_EQ(spacetime_report(0, 7, 6).t_round_ns, 4000.0);
}

TEST(Results, ScoreArithmetic) {
  const auto r = finalize_result(1000, 100, 100, 190, 6);
  EXPECT_NEAR(r.overall, 0.19, 1e-12);
  EXPECT_NEAR(r.score, 1 / 0.19, 1e-12);
  EXPECT_NEAR(r.stderr_x, std::sqrt(0.1 * 0.9 / 1000), 1e-12);
}

TEST(Results, JsonAndCsv) {
  const auto r = finalize_result(1000, 10, 20, 29, 6);
  const auto j = nlohmann::json::parse(result_to_json(r, "ml", 3));
  EXPECT_EQ(j.at("decoder"), "ml");
  EXPECT_EQ(j.at("seed"), 3);
  EXPECT_EQ(j.at("depth"), 6);
  EXPECT_DOUBLE_EQ(j.at("p_z").get<double>(), 0.02);
  const std::string row = result_to_csv_row(r, "ml", 3);
  EXPECT_EQ(row.rfind("0.01,0.02,", 0), 0u);
  const std::string header = result_csv_header();
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
}

}  // namespace
}  // namespace asyn
