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

#include "asyn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "asyn/code.hpp"
#include "asyn/decode.hpp"
#include "asyn/errors.hpp"
#include "asyn/mcts.hpp"
#include "asyn/noise.hpp"
#include "asyn/schedule.hpp"
#include "asyn/sim.hpp"

namespace asyn::cli {

namespace {

struct Options {
  std::string code;
  std::string decoder = "ml";
  std::string noise = "brisbane";
  std::uint64_t shots = 10000;
  std::uint64_t final_shots = 0;
  std::uint64_t iters = 4000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::string method;
  bool eval = false;
  double t2q = 600;
  double tmeas = 4000;
  double budget = 60;
  std::vector<std::string> schedules;
  std::optional<std::size_t> depth;
  std::string log;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw ParseError("cannot write " + path);
  o << text;
  if (!o) throw ParseError("error writing " + path);
}

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("ASYN_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0) throw ConfigError(std::string("ASYN_THREADS must be a positive integer, got \"") + env + "\"");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Seed for the re-evaluation of a searched schedule, distinct from the one
// used inside the search.
std::uint64_t fresh_seed(std::uint64_t seed) { return seed + 0x9e3779b97f4a7c15ULL; }

void require_positive(std::uint64_t v, const char* name) {
  if (v == 0) throw ConfigError(std::string("--") + name + " must be positive");
}

struct Loaded {
  StabilizerCode code;
  NoiseModel noise;
  std::unique_ptr<Decoder> decoder;
};

Loaded load_all(const Options& o) {
  Loaded l;
  l.code = load_code(o.code);
  l.noise = noise_from_spec(o.noise);
  validate_noise(l.noise, l.code.n + l.code.r());
  l.decoder = make_decoder(o.decoder, build_decoding_model(l.code, l.noise));
  return l;
}

SimOptions sim_options(const Options& o, std::uint64_t shots, std::uint64_t seed) {
  SimOptions s;
  s.shots = shots;
  s.seed = seed;
  s.threads = resolve_threads(o.threads);
  return s;
}

void print_result(std::ostream& out, const EvalResult& r) {
  out << "depth    " << r.depth << "\n";
  out << "p_x      " << fmt("%.6g", r.p_x) << " +- " << fmt("%.2g", r.stderr_x) << "\n";
  out << "p_z      " << fmt("%.6g", r.p_z) << " +- " << fmt("%.2g", r.stderr_z) << "\n";
  out << "overall  " << fmt("%.6g", r.overall) << " +- " << fmt("%.2g", r.stderr_overall) << "\n";
  out << "shots    " << r.shots << "\n";
}

void write_results(const std::string& json_path, const EvalResult& r, const std::string& decoder, std::uint64_t seed) {
  write_text(json_path, result_to_json(r, decoder, seed));
  write_text(sibling_path(json_path, ".csv"), result_csv_header() + result_to_csv_row(r, decoder, seed));
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
  const StabilizerCode code = load_code(o.code);
  const auto checks = derive_checks(code);
  out << "family       " << code.family << "\n";
  out << "parameters   [[" << code.n << "," << code.k << "," << code.d << "]]\n";
  out << "stabilizers  " << code.r() << (code.is_css() ? " (CSS)" : "") << "\n";
  out << "checks       " << checks.checks.size() << "\n";
  out << "commutation  ok\nindependence ok\nlogicals     ok\n";
  try {
    const auto d = brute_force_distance(code, code.d);
    if (!d) {
      throw CodeInvariantError("declared distance " + std::to_string(code.d) + " but no logical operator has weight <= " +
                               std::to_string(code.d));
    }
    if (*d != code.d) {
      throw CodeInvariantError("declared distance " + std::to_string(code.d) + " but a logical operator has weight " +
                               std::to_string(*d));
    }
    out << "distance     " << *d << " (exhaustive)\n";
  } catch (const ConfigError&) {
    out << "distance     not checked (search too large)\n";
  }
  out << "valid\n";
  return kOk;
}

int cmd_schedule(const Options& o, std::ostream& out, std::ostream& err) {
  require_positive(o.shots, "shots");
  require_positive(o.iters, "iters");
  const Loaded l = load_all(o);
  SearchConfig cfg;
  cfg.iters_per_step = o.iters;
  cfg.eval_shots = o.shots;
  cfg.master_seed = o.seed;
  cfg.threads = resolve_threads(o.threads);
  const PartitionSet parts = partition_stabilizers(l.code, o.seed);
  err << "searching " << parts.groups.size() << " partition(s), " << o.iters << " iterations per step\n";

  std::ofstream log_file;
  if (!o.log.empty()) {
    log_file.open(o.log, std::ios::binary);
    if (!log_file) throw ParseError("cannot write " + o.log);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SearchResult res = continuous_search(l.code, parts, cfg, l.noise, *l.decoder, o.log.empty() ? nullptr : &log_file);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const ScheduleReport rep = validate_schedule(l.code, res.schedule);
  if (!rep.valid()) throw ContractError("search produced an invalid schedule");

  const std::string path = o.out.empty() ? sibling_path(o.code, ".schedule.json") : o.out;
  write_schedule(res.schedule, path);
  const std::uint64_t seed = fresh_seed(o.seed);
  const std::uint64_t shots = o.final_shots ? o.final_shots : 10 * o.shots;
  const EvalResult r = estimate_logical_error(l.code, res.schedule, l.noise, *l.decoder, sim_options(o, shots, seed));
  write_results(sibling_path(path, ".results.json"), r, o.decoder, seed);

  out << "schedule " << path << "\n";
  print_result(out, r);
  out << "evaluations " << res.evaluations << " (cache hits " << res.cache_hits << ")\n";
  out << "wall time " << fmt("%.2f", wall) << " s\n";
  return kOk;
}

int cmd_baseline(const Options& o, std::ostream& out) {
  const StabilizerCode code = load_code(o.code);
  Schedule s;
  if (o.method == "lexical") {
    s = lexical_schedule(code);
  } else if (o.method == "greedy") {
    s = greedy_lowest_depth(code);
  } else if (o.method == "optimal") {
    const OptimalResult opt = optimal_lowest_depth(code, o.budget);
    s = opt.schedule;
    out << "proven optimal " << (opt.proven_optimal ? "yes" : "no") << " (lower bound " << opt.lower_bound << ")\n";
  } else if (o.method == "zigzag" || o.method == "clockwise" || o.method == "anticlockwise") {
    s = gen_reference_schedule(code, o.method);
  } else {
    throw ConfigError("unknown method \"" + o.method +
                      "\" (available: lexical, greedy, optimal, zigzag, clockwise, anticlockwise)");
  }
  const ScheduleReport rep = validate_schedule(code, s);
  const std::string path = o.out.empty() ? sibling_path(o.code, "." + o.method + ".json") : o.out;
  write_schedule(s, path);
  out << "schedule " << path << "\n";
  out << "depth " << s.depth() << "\n";
  if (!rep.ordering_violations.empty()) {
    out << "ordering violations " << rep.ordering_violations.size() << "\n";
  }
  if (o.eval) {
    require_positive(o.shots, "shots");
    const Loaded l = load_all(o);
    const EvalResult r = estimate_logical_error(l.code, s, l.noise, *l.decoder, sim_options(o, o.shots, o.seed));
    write_results(sibling_path(path, ".results.json"), r, o.decoder, o.seed);
    print_result(out, r);
  }
  return kOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  require_positive(o.shots, "shots");
  if (o.schedules.size() != 1) throw ConfigError("evaluate takes exactly one --schedule");
  const Loaded l = load_all(o);
  const Schedule s = load_schedule(o.schedules[0], l.code);
  const EvalResult r = estimate_logical_error(l.code, s, l.noise, *l.decoder, sim_options(o, o.shots, o.seed));
  const std::string path = o.out.empty() ? sibling_path(o.schedules[0], ".results.json") : o.out;
  write_results(path, r, o.decoder, o.seed);
  out << "results " << path << "\n";
  print_result(out, r);
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  require_positive(o.shots, "shots");
  if (o.schedules.size() < 2) throw ConfigError("compare needs at least two --schedule files");
  const Loaded l = load_all(o);
  std::vector<EvalResult> rs;
  for (const auto& p : o.schedules) {
    const Schedule s = load_schedule(p, l.code);
    rs.push_back(estimate_logical_error(l.code, s, l.noise, *l.decoder, sim_options(o, o.shots, o.seed)));
  }
  const double base = rs[0].overall;
  auto reduction = [&](const EvalResult& r) { return base > 0 ? (base - r.overall) / base : 0.0; };
  std::size_t w = 8;
  for (const auto& p : o.schedules) w = std::max(w, p.size());
  char line[512];
  std::snprintf(line, sizeof line, "%-*s %6s %12s %12s %12s %10s\n", static_cast<int>(w), "schedule", "depth", "p_x",
                "p_z", "overall", "reduction");
  out << line;
  std::string csv = "schedule,depth,p_x,p_z,overall,stderr_overall,reduction\n";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto& r = rs[i];
    std::snprintf(line, sizeof line, "%-*s %6zu %12.4e %12.4e %12.4e %9.2f%%\n", static_cast<int>(w),
                  o.schedules[i].c_str(), r.depth, r.p_x, r.p_z, r.overall, 100.0 * reduction(r));
    out << line;
    std::snprintf(line, sizeof line, "%s,%zu,%.10g,%.10g,%.10g,%.10g,%.10g\n", o.schedules[i].c_str(), r.depth, r.p_x,
                  r.p_z, r.overall, r.stderr_overall, reduction(r));
    csv += line;
  }
  out << "shared seed " << o.seed << ", " << o.shots << " shots each, decoder " << o.decoder
      << ", reduction relative to the first schedule\n";
  if (!o.out.empty()) {
    write_text(o.out, csv);
    out << "csv " << o.out << "\n";
  }
  return kOk;
}

int cmd_spacetime(const Options& o, std::ostream& out) {
  if (!(o.t2q >= 0) || !(o.tmeas >= 0)) throw ConfigError("--t2q and --tmeas must be non-negative");
  const StabilizerCode code = load_code(o.code);
  std::size_t depth = 0;
  if (!o.schedules.empty()) {
    depth = load_schedule(o.schedules[0], code).depth();
  } else if (o.depth) {
    depth = *o.depth;
  } else {
    throw ConfigError("spacetime needs --schedule or --depth");
  }
  const SpacetimeReport rep = spacetime_report(depth, code.n, code.r(), o.t2q, o.tmeas);
  out << "depth            " << rep.depth << "\n";
  out << "round time       " << fmt("%.4g", rep.t_round_units) << " units (" << fmt("%.0f", rep.t_round_ns) << " ns)\n";
  out << "physical qubits  " << rep.physical_qubits << " (" << rep.data_qubits << " data)\n";
  out << "volume           " << fmt("%.4g", rep.volume_units) << " unit-qubits\n";
  out << "volume (data)    " << fmt("%.4g", rep.volume_data_units) << " unit-qubits\n";
  return kOk;
}

}  // namespace

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const std::string ext = ".json";
  if (path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return path.substr(0, path.size() - ext.size()) + suffix;
  }
  return path + suffix;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Syndrome-measurement schedule synthesis"};
  app.name("asyn");
  app.require_subcommand(1);

  auto add_code = [&](CLI::App* c) { c->add_option("--code", o.code, "Code JSON file")->required(); };
  auto add_sim = [&](CLI::App* c) {
    c->add_option("--decoder", o.decoder, "ml, uf, mwpm or bposd");
    c->add_option("--noise", o.noise, "brisbane, zero, p=..,p_2q=..,p_idle=.. or a noise file");
    c->add_option("--shots", o.shots, "Monte Carlo shots");
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--threads", o.threads, "Simulator threads (default: ASYN_THREADS or all cores)");
  };

  auto* validate = app.add_subcommand("validate", "Check a code file");
  add_code(validate);

  auto* schedule = app.add_subcommand("schedule", "Search a schedule with MCTS");
  add_code(schedule);
  add_sim(schedule);
  schedule->add_option("--iters", o.iters, "MCTS iterations per step");
  schedule->add_option("--final-shots", o.final_shots, "Shots for the final re-evaluation (default 10x --shots)");
  schedule->add_option("--out", o.out, "Schedule output path");
  schedule->add_option("--log", o.log, "Per-step JSON-lines search log");

  auto* baseline = app.add_subcommand("baseline", "Write a baseline schedule");
  add_code(baseline);
  add_sim(baseline);
  baseline->add_option("--method", o.method, "lexical, greedy, optimal, zigzag, clockwise or anticlockwise")->required();
  baseline->add_option("--out", o.out, "Schedule output path");
  baseline->add_flag("--eval", o.eval, "Also estimate its logical error rates");
  baseline->add_option("--budget", o.budget, "Time budget in seconds for --method optimal");

  auto* evaluate = app.add_subcommand("evaluate", "Estimate logical error rates of a schedule");
  add_code(evaluate);
  add_sim(evaluate);
  evaluate->add_option("--schedule", o.schedules, "Schedule file")->required();
  evaluate->add_option("--out", o.out, "Results JSON path (CSV written beside it)");

  auto* compare = app.add_subcommand("compare", "Evaluate several schedules under one seed");
  add_code(compare);
  add_sim(compare);
  compare->add_option("--schedule", o.schedules, "Schedule files; the first is the baseline")->required();
  compare->add_option("--out", o.out, "CSV output path");

  auto* spacetime = app.add_subcommand("spacetime", "Round time and space-time volume");
  add_code(spacetime);
  spacetime->add_option("--schedule", o.schedules, "Schedule file");
  spacetime->add_option("--depth", o.depth, "Depth, instead of a schedule");
  spacetime->add_option("--t2q", o.t2q, "Two-qubit gate time in ns");
  spacetime->add_option("--tmeas", o.tmeas, "Measurement time in ns");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*schedule) return cmd_schedule(o, out, err);
    if (*baseline) return cmd_baseline(o, out);
    if (*evaluate) return cmd_evaluate(o, out);
    if (*compare) return cmd_compare(o, out);
    if (*spacetime) return cmd_spacetime(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const CodeInvariantError& e) {
    err << "error: " << e.what() << "\n";
    return kCodeInvariant;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kContract;
  }
  return kOk;
}

}  // namespace asyn::cli
