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

#include "asyn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>
#include <thread>

#include <json.hpp>

#include "asyn/errors.hpp"

namespace asyn {

Circuit build_circuit(const StabilizerCode& code, const Schedule& schedule) {
  const auto rep = validate_schedule(code, schedule);
  if (!rep.conflict_free()) throw ConfigError("cannot build circuit: " + rep.conflicts.front());
  Circuit c;
  c.num_data = code.n;
  c.num_qubits = code.n + code.r();
  c.ticks.resize(schedule.depth());
  std::vector<std::size_t> first(c.num_qubits, 0);
  std::vector<std::size_t> last(c.num_qubits, 0);
  for (const auto& [chk, t] : schedule.assignments()) {
    c.ticks[t - 1].checks.push_back(chk);
    const std::size_t a = chk.ancilla;
    if (first[a] == 0 || t < first[a]) first[a] = t;
    last[a] = std::max(last[a], t);
  }
  std::vector<char> busy(c.num_qubits);
  for (std::size_t t = 1; t <= c.depth(); ++t) {
    auto& tick = c.ticks[t - 1];
    std::sort(tick.checks.begin(), tick.checks.end(),
              [](const PauliCheck& x, const PauliCheck& y) { return std::tie(x.ancilla, x.data) < std::tie(y.ancilla, y.data); });
    std::fill(busy.begin(), busy.end(), 0);
    for (const auto& chk : tick.checks) busy[chk.data] = busy[chk.ancilla] = 1;
    for (std::size_t q = 0; q < c.num_qubits; ++q) {
      if (busy[q]) continue;
      const bool active = q < code.n || (first[q] != 0 && first[q] <= t && t <= last[q]);
      if (active) tick.idle.push_back(q);
    }
  }
  return c;
}

std::vector<FaultLocation> fault_locations(const Circuit& circuit, const NoiseModel& noise) {
  std::vector<FaultLocation> out;
  for (std::size_t t = 0; t < circuit.depth(); ++t) {
    for (const auto& chk : circuit.ticks[t].checks) {
      out.push_back({t, true, chk.data, chk.ancilla, noise.check_rate(chk.data, chk.ancilla)});
    }
    for (auto q : circuit.ticks[t].idle) out.push_back({t, false, q, 0, noise.idle_rate(q)});
  }
  return out;
}

namespace {

void apply_fault(PauliString& f, const FaultLocation& loc, unsigned v) {
  if (v & 1u) f.x().flip(loc.q0);
  if (v & 2u) f.z().flip(loc.q0);
  if (loc.two_qubit) {
    if (v & 4u) f.x().flip(loc.q1);
    if (v & 8u) f.z().flip(loc.q1);
  }
}

PauliString data_part(const PauliString& f, std::size_t n) {
  PauliString out(n);
  for (std::size_t q = 0; q < n; ++q) out.set(q, f.at(q));
  return out;
}

double uniform01(std::mt19937_64& rng) {
  // 53 random bits in (0, 1].
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

PauliString propagate_faults(const Circuit& circuit, const std::vector<FaultLocation>& locs,
                             const std::vector<Fault>& faults) {
  PauliString f(circuit.num_qubits);
  std::size_t next = 0;
  std::size_t li = 0;
  for (std::size_t t = 0; t < circuit.depth(); ++t) {
    for (const auto& chk : circuit.ticks[t].checks) conjugate_in_place(f, chk);
    while (li < locs.size() && locs[li].tick == t) {
      while (next < faults.size() && faults[next].location == li) {
        apply_fault(f, locs[li], faults[next].pauli);
        ++next;
      }
      ++li;
    }
  }
  return data_part(f, circuit.num_data);
}

PauliString sample_residual(const Circuit& circuit, const NoiseModel& noise, std::uint64_t shot_seed) {
  std::mt19937_64 rng(shot_seed);
  const auto locs = fault_locations(circuit, noise);
  PauliString f(circuit.num_qubits);
  std::size_t li = 0;
  for (std::size_t t = 0; t < circuit.depth(); ++t) {
    for (const auto& chk : circuit.ticks[t].checks) conjugate_in_place(f, chk);
    for (; li < locs.size() && locs[li].tick == t; ++li) {
      if (uniform01(rng) > locs[li].p) continue;
      const unsigned m = locs[li].two_qubit ? 15 : 3;
      apply_fault(f, locs[li], 1 + static_cast<unsigned>(rng() % m));
    }
  }
  return data_part(f, circuit.num_data);
}

EvalResult finalize_result(std::uint64_t shots, std::uint64_t x_events, std::uint64_t z_events,
                           std::uint64_t any_events, std::size_t depth) {
  EvalResult r;
  r.shots = shots;
  r.x_events = x_events;
  r.z_events = z_events;
  r.any_events = any_events;
  r.depth = depth;
  const double n = static_cast<double>(shots);
  if (shots == 0) return r;
  r.p_x = static_cast<double>(x_events) / n;
  r.p_z = static_cast<double>(z_events) / n;
  r.overall = 1.0 - (1.0 - r.p_x) * (1.0 - r.p_z);
  r.score = r.overall > 0 ? 1.0 / r.overall : 2.0 * n;
  r.stderr_x = std::sqrt(r.p_x * (1 - r.p_x) / n);
  r.stderr_z = std::sqrt(r.p_z * (1 - r.p_z) / n);
  const double q = static_cast<double>(any_events) / n;
  r.stderr_overall = std::sqrt(q * (1 - q) / n);
  return r;
}

DecodeCache::DecodeCache(const StabilizerCode& code, const Decoder& decoder) : code_(code), decoder_(decoder) {
  if (code.k > 64) throw ConfigError("at most 64 logical qubits are supported");
}

DecodeCache::Entry DecodeCache::lookup(const BitVec& s) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = table_.find(s);
  if (it != table_.end()) return it->second;
  const PauliString c = decoder_.decode(s);
  if (c.n() != code_.n || syndrome(c, code_.stabilizers) != s) {
    throw ContractError("decoder \"" + decoder_.name() + "\" returned a correction inconsistent with syndrome " +
                        s.str());
  }
  Entry e;
  for (std::size_t j = 0; j < code_.k; ++j) {
    if (symplectic_parity(c, code_.logical_xs[j])) e.flips_lx |= std::uint64_t{1} << j;
    if (symplectic_parity(c, code_.logical_zs[j])) e.flips_lz |= std::uint64_t{1} << j;
  }
  table_.emplace(s, e);
  return e;
}

namespace {

struct SupportEntry {
  std::size_t qubit;
  bool use_x;  // the operator's letter has a Z part, so frame X anticommutes
  bool use_z;
};

std::vector<SupportEntry> support_of(const PauliString& p) {
  std::vector<SupportEntry> out;
  for (std::size_t q = 0; q < p.n(); ++q) {
    const PauliOp op = p.at(q);
    if (op == PauliOp::I) continue;
    out.push_back({q, p.z()[q], p.x()[q]});
  }
  return out;
}

std::uint64_t parity_word(const std::vector<SupportEntry>& sup, const std::vector<std::uint64_t>& X,
                          const std::vector<std::uint64_t>& Z) {
  std::uint64_t w = 0;
  for (const auto& e : sup) {
    if (e.use_x) w ^= X[e.qubit];
    if (e.use_z) w ^= Z[e.qubit];
  }
  return w;
}

struct Counts {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::uint64_t any = 0;
};

class BatchSampler {
 public:
  BatchSampler(const StabilizerCode& code, const Circuit& circuit, const NoiseModel& noise)
      : code_(code), circuit_(circuit), locs_(fault_locations(circuit, noise)) {
    for (const auto& l : locs_) log1mp_.push_back(l.p >= 1.0 ? 0.0 : std::log1p(-l.p));
    tick_begin_.assign(circuit.depth() + 1, locs_.size());
    for (std::size_t i = locs_.size(); i-- > 0;) tick_begin_[locs_[i].tick] = i;
    for (std::size_t t = circuit.depth(); t-- > 0;) tick_begin_[t] = std::min(tick_begin_[t], tick_begin_[t + 1]);
    for (const auto& s : code.stabilizers) stab_sup_.push_back(support_of(s));
    for (const auto& l : code.logical_xs) lx_sup_.push_back(support_of(l));
    for (const auto& l : code.logical_zs) lz_sup_.push_back(support_of(l));
  }

  Counts run_batch(std::uint64_t seed, std::uint64_t batch, unsigned lanes, DecodeCache& cache,
                   std::unordered_map<std::uint64_t, DecodeCache::Entry>& local) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t nq = circuit_.num_qubits;
    X_.assign(nq, 0);
    Z_.assign(nq, 0);
    for (std::size_t t = 0; t < circuit_.depth(); ++t) {
      for (const auto& c : circuit_.ticks[t].checks) {
        if (c.basis == PauliOp::Z) {
          X_[c.ancilla] ^= X_[c.data];
          Z_[c.data] ^= Z_[c.ancilla];
        } else {
          X_[c.data] ^= Z_[c.ancilla];
          X_[c.ancilla] ^= Z_[c.data];
        }
      }
      for (std::size_t li = tick_begin_[t]; li < tick_begin_[t + 1]; ++li) {
        const auto& loc = locs_[li];
        if (loc.p <= 0) continue;
        const unsigned m = loc.two_qubit ? 15 : 3;
        std::uint64_t lane = 0;
        while (true) {
          if (loc.p < 1.0) {
            const double skip = std::floor(std::log(uniform01(rng)) / log1mp_[li]);
            if (skip >= 64.0) break;
            lane += static_cast<std::uint64_t>(skip);
          }
          if (lane >= 64) break;
          const unsigned v = 1 + static_cast<unsigned>(rng() % m);
          const std::uint64_t bit = std::uint64_t{1} << lane;
          if (v & 1u) X_[loc.q0] ^= bit;
          if (v & 2u) Z_[loc.q0] ^= bit;
          if (v & 4u) X_[loc.q1] ^= bit;
          if (v & 8u) Z_[loc.q1] ^= bit;
          ++lane;
        }
      }
    }
    const std::size_t r = code_.r();
    synd_.resize(r);
    for (std::size_t i = 0; i < r; ++i) synd_[i] = parity_word(stab_sup_[i], X_, Z_);
    lxw_.resize(lx_sup_.size());
    lzw_.resize(lz_sup_.size());
    for (std::size_t j = 0; j < lx_sup_.size(); ++j) lxw_[j] = parity_word(lx_sup_[j], X_, Z_);
    for (std::size_t j = 0; j < lz_sup_.size(); ++j) lzw_[j] = parity_word(lz_sup_[j], X_, Z_);

    Counts cnt;
    BitVec s(r);
    for (unsigned l = 0; l < lanes; ++l) {
      std::uint64_t ex = 0;
      std::uint64_t ez = 0;
      for (std::size_t j = 0; j < lxw_.size(); ++j) ex |= ((lxw_[j] >> l) & 1u) << j;
      for (std::size_t j = 0; j < lzw_.size(); ++j) ez |= ((lzw_[j] >> l) & 1u) << j;
      DecodeCache::Entry e;
      if (r <= 64) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < r; ++i) key |= ((synd_[i] >> l) & 1u) << i;
        auto it = local.find(key);
        if (it == local.end()) {
          e = cache.lookup(BitVec::from_low_bits(r, key));
          local.emplace(key, e);
        } else {
          e = it->second;
        }
      } else {
        for (std::size_t i = 0; i < r; ++i) s.set(i, (synd_[i] >> l) & 1u);
        e = cache.lookup(s);
      }
      // A logical-Z event flips some logical X, a logical-X event some logical Z.
      const bool zev = (ex ^ e.flips_lx) != 0;
      const bool xev = (ez ^ e.flips_lz) != 0;
      cnt.z += zev;
      cnt.x += xev;
      cnt.any += zev || xev;
    }
    return cnt;
  }

 private:
  const StabilizerCode& code_;
  const Circuit& circuit_;
  std::vector<FaultLocation> locs_;
  std::vector<double> log1mp_;
  std::vector<std::size_t> tick_begin_;
  std::vector<std::vector<SupportEntry>> stab_sup_;
  std::vector<std::vector<SupportEntry>> lx_sup_;
  std::vector<std::vector<SupportEntry>> lz_sup_;
  std::vector<std::uint64_t> X_;
  std::vector<std::uint64_t> Z_;
  std::vector<std::uint64_t> synd_;
  std::vector<std::uint64_t> lxw_;
  std::vector<std::uint64_t> lzw_;
};

}  // namespace

EvalResult estimate_logical_error(const StabilizerCode& code, const Circuit& circuit, const NoiseModel& noise,
                                  DecodeCache& cache, const SimOptions& opts) {
  validate_noise(noise, circuit.num_qubits);
  const std::uint64_t batches = (opts.shots + 63) / 64;
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(std::max<std::uint64_t>(batches, 1))));
  std::vector<Counts> per(threads);
  std::vector<std::exception_ptr> errs(threads);
  auto worker = [&](unsigned t) {
    try {
      BatchSampler sampler(code, circuit, noise);
      std::unordered_map<std::uint64_t, DecodeCache::Entry> local;
      for (std::uint64_t b = t; b < batches; b += threads) {
        const std::uint64_t done = b * 64;
        const unsigned lanes = static_cast<unsigned>(std::min<std::uint64_t>(64, opts.shots - done));
        const Counts c = sampler.run_batch(opts.seed, b, lanes, cache, local);
        per[t].x += c.x;
        per[t].z += c.z;
        per[t].any += c.any;
      }
    } catch (...) {
      errs[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  Counts total;
  for (const auto& c : per) {
    total.x += c.x;
    total.z += c.z;
    total.any += c.any;
  }
  return finalize_result(opts.shots, total.x, total.z, total.any, circuit.depth());
}

EvalResult estimate_logical_error(const StabilizerCode& code, const Schedule& schedule, const NoiseModel& noise,
                                  const Decoder& decoder, const SimOptions& opts) {
  const Circuit circuit = build_circuit(code, schedule);
  DecodeCache cache(code, decoder);
  return estimate_logical_error(code, circuit, noise, cache, opts);
}

OracleResult first_order_oracle(const StabilizerCode& code, const Schedule& schedule, const NoiseModel& noise,
                                const Decoder& decoder, std::size_t max_configurations) {
  const Circuit circuit = build_circuit(code, schedule);
  validate_noise(noise, circuit.num_qubits);
  const auto locs = fault_locations(circuit, noise);
  std::size_t configs = 0;
  for (const auto& l : locs) configs += l.two_qubit ? 15 : 3;
  if (configs > max_configurations) {
    throw ConfigError("first_order_oracle: " + std::to_string(configs) + " single-fault configurations exceed the guard");
  }
  // others[i] = product over j != i of (1 - p_j), via prefix and suffix products.
  const std::size_t F = locs.size();
  std::vector<double> prefix(F + 1, 1.0);
  std::vector<double> suffix(F + 1, 1.0);
  for (std::size_t i = 0; i < F; ++i) prefix[i + 1] = prefix[i] * (1 - locs[i].p);
  for (std::size_t i = F; i-- > 0;) suffix[i] = suffix[i + 1] * (1 - locs[i].p);
  DecodeCache cache(code, decoder);
  OracleResult res;
  res.configurations = configs;
  for (std::size_t i = 0; i < F; ++i) {
    if (locs[i].p <= 0) continue;
    const unsigned m = locs[i].two_qubit ? 15 : 3;
    const double each = locs[i].p / m * prefix[i] * suffix[i + 1];
    for (unsigned v = 1; v <= m; ++v) {
      const PauliString e = propagate_faults(circuit, locs, {{i, v}});
      const BitVec s = syndrome(e, code.stabilizers);
      const DecodeCache::Entry entry = cache.lookup(s);
      bool zev = false;
      bool xev = false;
      for (std::size_t j = 0; j < code.k; ++j) {
        zev = zev || (symplectic_parity(e, code.logical_xs[j]) != static_cast<bool>((entry.flips_lx >> j) & 1u));
        xev = xev || (symplectic_parity(e, code.logical_zs[j]) != static_cast<bool>((entry.flips_lz >> j) & 1u));
      }
      if (zev) res.p_z += each;
      if (xev) res.p_x += each;
    }
  }
  return res;
}

SpacetimeReport spacetime_report(std::size_t depth, std::size_t n, std::size_t r, double t_2q_ns, double t_meas_ns) {
  SpacetimeReport rep;
  rep.depth = depth;
  rep.t_round_ns = static_cast<double>(depth) * t_2q_ns + t_meas_ns;
  rep.data_qubits = n;
  rep.physical_qubits = n + r;
  rep.t_round_units = rep.t_round_ns / 1000.0;
  rep.volume_units = rep.t_round_units * static_cast<double>(rep.physical_qubits);
  rep.volume_data_units = rep.t_round_units * static_cast<double>(n);
  return rep;
}

SpacetimeReport spacetime_report(const StabilizerCode& code, const Schedule& schedule, double t_2q_ns,
                                 double t_meas_ns) {
  return spacetime_report(schedule.depth(), code.n, code.r(), t_2q_ns, t_meas_ns);
}

std::string result_to_json(const EvalResult& r, const std::string& decoder, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["p_x"] = r.p_x;
  j["p_z"] = r.p_z;
  j["overall"] = r.overall;
  j["score"] = r.score;
  j["shots"] = r.shots;
  j["stderr_x"] = r.stderr_x;
  j["stderr_z"] = r.stderr_z;
  j["stderr_overall"] = r.stderr_overall;
  j["depth"] = r.depth;
  j["decoder"] = decoder;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

std::string result_csv_header() { return "p_x,p_z,overall,score,shots,stderr_x,stderr_z,stderr_overall,depth,decoder,seed\n"; }

std::string result_to_csv_row(const EvalResult& r, const std::string& decoder, std::uint64_t seed) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%llu,%.6g,%.6g,%.6g,%zu,%s,%llu\n", r.p_x, r.p_z, r.overall,
                r.score, static_cast<unsigned long long>(r.shots), r.stderr_x, r.stderr_z, r.stderr_overall, r.depth,
                decoder.c_str(), static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace asyn
