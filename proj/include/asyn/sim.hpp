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

#ifndef ASYN_SIM_HPP
#define ASYN_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "asyn/code.hpp"
#include "asyn/decode.hpp"
#include "asyn/noise.hpp"
#include "asyn/pauli.hpp"
#include "asyn/schedule.hpp"

namespace asyn {

struct Tick {
  std::vector<PauliCheck> checks;
  std::vector<std::size_t> idle;
};

/// Ticks 1..depth stored at index 0..depth-1. Qubits 0..n-1 are data, n..
/// are ancillas. An ancilla is active from its first to its last check; data
/// qubits are active on every tick.
struct Circuit {
  std::size_t num_data = 0;
  std::size_t num_qubits = 0;
  std::vector<Tick> ticks;

  std::size_t depth() const { return ticks.size(); }
};

Circuit build_circuit(const StabilizerCode& code, const Schedule& schedule);

/// One fault: a non-identity Pauli at a fault location. For a check location
/// `pauli` holds (x_d, z_d, x_a, z_a) in bits 0..3; for an idle location it
/// holds (x, z) in bits 0..1.
struct Fault {
  std::size_t location = 0;
  unsigned pauli = 0;
};

/// Fault locations in circuit order: per tick, every check then every idle
/// qubit.
struct FaultLocation {
  std::size_t tick = 0;
  bool two_qubit = false;
  std::size_t q0 = 0;  // data qubit, or the idle qubit
  std::size_t q1 = 0;  // ancilla (two-qubit only)
  double p = 0.0;
};

std::vector<FaultLocation> fault_locations(const Circuit& circuit, const NoiseModel& noise);

/// Propagates the given faults (sorted by location) through the round and
/// returns the data-qubit part of the frame.
PauliString propagate_faults(const Circuit& circuit, const std::vector<FaultLocation>& locations,
                             const std::vector<Fault>& faults);

/// Reference single-shot sampler.
PauliString sample_residual(const Circuit& circuit, const NoiseModel& noise, std::uint64_t shot_seed);

struct EvalResult {
  double p_x = 0;
  double p_z = 0;
  double overall = 0;
  double score = 0;
  std::uint64_t shots = 0;
  std::uint64_t x_events = 0;
  std::uint64_t z_events = 0;
  std::uint64_t any_events = 0;
  double stderr_x = 0;
  double stderr_z = 0;
  double stderr_overall = 0;
  std::size_t depth = 0;
};

/// Fills overall, score and the standard errors from the event counts.
EvalResult finalize_result(std::uint64_t shots, std::uint64_t x_events, std::uint64_t z_events,
                           std::uint64_t any_events, std::size_t depth);

/// Decoder wrapper that memoizes, per syndrome, which logical operators the
/// correction anticommutes with. Thread-safe. Verifies each fresh correction
/// against its syndrome and throws ContractError on a mismatch.
class DecodeCache {
 public:
  DecodeCache(const StabilizerCode& code, const Decoder& decoder);

  struct Entry {
    std::uint64_t flips_lx = 0;  // bit j: correction anticommutes with logical_xs[j]
    std::uint64_t flips_lz = 0;
  };
  Entry lookup(const BitVec& syndrome);
  const Decoder& decoder() const { return decoder_; }

 private:
  const StabilizerCode& code_;
  const Decoder& decoder_;
  std::mutex mu_;
  std::unordered_map<BitVec, Entry, BitVecHash> table_;
};

struct SimOptions {
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Monte Carlo estimate of logical X/Z error rates for one noisy round
/// followed by ideal decoding. Shots are processed in 64-wide batches whose
/// randomness depends only on (seed, batch index).
EvalResult estimate_logical_error(const StabilizerCode& code, const Circuit& circuit, const NoiseModel& noise,
                                  DecodeCache& cache, const SimOptions& opts);
EvalResult estimate_logical_error(const StabilizerCode& code, const Schedule& schedule, const NoiseModel& noise,
                                  const Decoder& decoder, const SimOptions& opts);

struct OracleResult {
  double p_x = 0;
  double p_z = 0;
  std::size_t configurations = 0;
};

/// Exact probability of logical events from at most one fault.
OracleResult first_order_oracle(const StabilizerCode& code, const Schedule& schedule, const NoiseModel& noise,
                                const Decoder& decoder, std::size_t max_configurations = 2'000'000);

struct SpacetimeReport {
  std::size_t depth = 0;
  double t_round_ns = 0;
  std::size_t data_qubits = 0;
  std::size_t physical_qubits = 0;  // data + ancilla
  // Time in microseconds and volume in microsecond-qubits; the published
  // table labels this unit "ms".
  double t_round_units = 0;
  double volume_units = 0;       // t_round_units * physical_qubits
  double volume_data_units = 0;  // t_round_units * data_qubits
};

SpacetimeReport spacetime_report(const StabilizerCode& code, const Schedule& schedule, double t_2q_ns = 600,
                                 double t_meas_ns = 4000);
SpacetimeReport spacetime_report(std::size_t depth, std::size_t n, std::size_t r, double t_2q_ns = 600,
                                 double t_meas_ns = 4000);

std::string result_to_json(const EvalResult& r, const std::string& decoder, std::uint64_t seed);
std::string result_csv_header();
std::string result_to_csv_row(const EvalResult& r, const std::string& decoder, std::uint64_t seed);

}  // namespace asyn

#endif  // ASYN_SIM_HPP
