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

#include "asyn/noise.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asyn/errors.hpp"

namespace asyn {

namespace {

const QubitOverride kNoOverride{};

const QubitOverride& override_of(const NoiseModel& m, std::size_t q) {
  auto it = m.overrides.find(q);
  return it == m.overrides.end() ? kNoOverride : it->second;
}

double clamp01(double p) { return p < 0 ? 0 : (p > 1 ? 1 : p); }

}  // namespace

double NoiseModel::check_rate(std::size_t data, std::size_t ancilla) const {
  return clamp01(p_2q * override_of(*this, data).p_2q_mult * override_of(*this, ancilla).p_2q_mult);
}

double NoiseModel::idle_rate(std::size_t qubit) const {
  return clamp01(p_idle * override_of(*this, qubit).p_idle_mult);
}

void validate_noise(const NoiseModel& m, std::size_t num_qubits) {
  auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in01(m.p_2q) || !in01(m.p_idle) || !in01(m.p_meas)) {
    throw ConfigError("noise rates must lie in [0, 1]");
  }
  for (const auto& [q, o] : m.overrides) {
    if (q >= num_qubits) {
      throw ConfigError("noise override names qubit " + std::to_string(q) + " but the circuit has " +
                        std::to_string(num_qubits) + " qubits");
    }
    if (o.p_2q_mult < 0 || o.p_idle_mult < 0) throw ConfigError("noise multipliers must be non-negative");
  }
}

NoiseModel parse_noise(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid noise JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("noise file must be a JSON object");
  NoiseModel m;
  try {
    m.p_2q = j.value("p_2q", m.p_2q);
    m.p_idle = j.value("p_idle", m.p_idle);
    m.p_meas = j.value("p_meas", m.p_meas);
    if (j.contains("overrides")) {
      for (const auto& o : j.at("overrides")) {
        QubitOverride ov;
        ov.p_2q_mult = o.value("p_2q_mult", 1.0);
        ov.p_idle_mult = o.value("p_idle_mult", 1.0);
        m.overrides[o.at("qubit").get<std::size_t>()] = ov;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad noise file: ") + e.what());
  }
  validate_noise(m, static_cast<std::size_t>(-1));
  return m;
}

NoiseModel load_noise(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_noise(ss.str());
}

std::string noise_to_json(const NoiseModel& m) {
  nlohmann::ordered_json j;
  j["p_2q"] = m.p_2q;
  j["p_idle"] = m.p_idle;
  j["p_meas"] = m.p_meas;
  j["overrides"] = nlohmann::ordered_json::array();
  for (const auto& [q, o] : m.overrides) {
    j["overrides"].push_back({{"qubit", q}, {"p_2q_mult", o.p_2q_mult}, {"p_idle_mult", o.p_idle_mult}});
  }
  return j.dump(2) + "\n";
}

NoiseModel noise_from_spec(const std::string& spec) {
  if (spec.empty() || spec == "brisbane" || spec == "default") return NoiseModel{};
  if (spec == "zero") return NoiseModel::zero();
  if (spec.find('=') != std::string::npos && !std::filesystem::exists(spec)) {
    NoiseModel m;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("noise spec entry \"" + item + "\" lacks '='");
      const std::string key = item.substr(0, eq);
      double v = 0;
      try {
        v = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError("noise spec value for \"" + key + "\" is not a number");
      }
      if (key == "p_2q") {
        m.p_2q = v;
      } else if (key == "p_idle") {
        m.p_idle = v;
      } else if (key == "p_meas") {
        m.p_meas = v;
      } else if (key == "p") {
        m.p_2q = m.p_idle = v;
      } else {
        throw ParseError("unknown noise key \"" + key + "\" (expected p, p_2q, p_idle, p_meas)");
      }
    }
    validate_noise(m, 0);
    return m;
  }
  return load_noise(spec);
}

}  // namespace asyn
