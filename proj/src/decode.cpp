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

#include "asyn/decode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "asyn/errors.hpp"
#include "asyn/gf2.hpp"

namespace asyn {

namespace {

constexpr double kUniformPrior = 0.01;
constexpr PauliOp kLetters[3] = {PauliOp::X, PauliOp::Z, PauliOp::Y};

}  // namespace

PauliString DecodingModel::error_of(std::size_t e) const {
  return PauliString::single(n, e / 3, kLetters[e % 3]);
}

DecodingModel build_decoding_model(const StabilizerCode& code, const std::optional<NoiseModel>& noise) {
  DecodingModel m;
  m.n = code.n;
  m.r = code.r();
  m.stabilizers = code.stabilizers;
  m.logicals = code.logical_xs;
  m.logicals.insert(m.logicals.end(), code.logical_zs.begin(), code.logical_zs.end());
  for (std::size_t q = 0; q < code.n; ++q) {
    double p = kUniformPrior;
    if (noise) {
      const double m2 = noise->overrides.count(q) ? noise->overrides.at(q).p_2q_mult : 1.0;
      const double mi = noise->overrides.count(q) ? noise->overrides.at(q).p_idle_mult : 1.0;
      p = (noise->p_2q * m2 + noise->p_idle * mi) / 3.0;
      p = std::clamp(p, 1e-12, 0.5);
    }
    for (auto l : kLetters) {
      m.columns.push_back(syndrome(PauliString::single(code.n, q, l), code.stabilizers));
      m.weights.push_back(-std::log(p));
    }
  }
  return m;
}

namespace {

PauliString compose_errors(const DecodingModel& m, const std::vector<std::size_t>& errs) {
  PauliString c(m.n);
  for (auto e : errs) c.apply(e / 3, kLetters[e % 3]);
  return c;
}

// ---------------------------------------------------------------------------

class MlDecoder : public Decoder {
 public:
  explicit MlDecoder(const DecodingModel& m) : m_(m) {
    if (m.r > 24) throw ConfigError("ml decoder needs r <= 24, code has r = " + std::to_string(m.r));
    const std::size_t size = std::size_t{1} << m.r;
    pred_.assign(size, kNone);
    std::vector<std::uint64_t> col(m.num_errors());
    for (std::size_t e = 0; e < col.size(); ++e) col[e] = m.columns[e].low_bits();
    const bool uniform = std::all_of(m.weights.begin(), m.weights.end(), [&](double w) { return w == m.weights[0]; });
    if (uniform) {
      std::vector<std::uint32_t> queue;
      queue.reserve(size);
      queue.push_back(0);
      pred_[0] = kRoot;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        const std::uint32_t s = queue[h];
        for (std::size_t e = 0; e < col.size(); ++e) {
          const auto t = static_cast<std::uint32_t>(s ^ col[e]);
          if (pred_[t] != kNone) continue;
          pred_[t] = static_cast<std::uint16_t>(e);
          queue.push_back(t);
        }
      }
    } else {
      std::vector<double> dist(size, std::numeric_limits<double>::infinity());
      using Item = std::pair<double, std::uint32_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      dist[0] = 0;
      pred_[0] = kRoot;
      pq.push({0.0, 0});
      while (!pq.empty()) {
        const auto [d, s] = pq.top();
        pq.pop();
        if (d > dist[s]) continue;
        for (std::size_t e = 0; e < col.size(); ++e) {
          const auto t = static_cast<std::uint32_t>(s ^ col[e]);
          const double nd = d + m.weights[e];
          if (nd < dist[t]) {
            dist[t] = nd;
            pred_[t] = static_cast<std::uint16_t>(e);
            pq.push({nd, t});
          }
        }
      }
    }
    cols_ = std::move(col);
  }

  std::string name() const override { return "ml"; }

  PauliString decode(const BitVec& s) const override {
    std::uint64_t cur = s.low_bits();
    std::vector<std::size_t> errs;
    while (cur != 0) {
      const auto e = pred_[cur];
      if (e == kNone) throw ContractError("ml decoder: syndrome " + s.str() + " is unreachable");
      errs.push_back(e);
      cur ^= cols_[e];
    }
    return compose_errors(m_, errs);
  }

 private:
  static constexpr std::uint16_t kNone = 0xffff;
  static constexpr std::uint16_t kRoot = 0xfffe;
  const DecodingModel m_;
  std::vector<std::uint16_t> pred_;
  std::vector<std::uint64_t> cols_;
};

// ---------------------------------------------------------------------------

class UnionFindDecoder : public Decoder {
 public:
  explicit UnionFindDecoder(const DecodingModel& m) : m_(m) {
    checks_of_.resize(m.num_errors());
    errors_of_.resize(m.r);
    for (std::size_t e = 0; e < m.num_errors(); ++e) {
      for (std::size_t i = 0; i < m.r; ++i) {
        if (m.columns[e][i]) {
          checks_of_[e].push_back(i);
          errors_of_[i].push_back(e);
        }
      }
    }
  }

  std::string name() const override { return "uf"; }

  PauliString decode(const BitVec& s) const override {
    const std::size_t r = m_.r;
    const std::size_t ne = m_.num_errors();
    // Cluster label per check (r = unowned), union-find over labels.
    std::vector<std::size_t> owner(r, r);
    std::vector<std::size_t> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<unsigned> growth(ne, 0);
    std::vector<char> absorbed(ne, 0);
    for (std::size_t i = 0; i < r; ++i) {
      if (s[i]) owner[i] = i;
    }
    auto checks_in = [&](std::size_t root) {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < r; ++i) {
        if (owner[i] != r && find(owner[i]) == root) out.push_back(i);
      }
      return out;
    };
    std::vector<std::size_t> absorbed_seq;
    auto interior_solution = [&](const std::vector<std::size_t>& cks) -> std::optional<std::vector<std::size_t>> {
      std::vector<char> in(r, 0);
      for (auto i : cks) in[i] = 1;
      std::vector<std::size_t> cols;
      for (auto e : absorbed_seq) {
        if (checks_of_[e].empty()) continue;
        bool inside = true;
        for (auto i : checks_of_[e]) inside = inside && in[i];
        if (inside) cols.push_back(e);
      }
      std::vector<BitVec> A;
      for (auto e : cols) {
        BitVec c(cks.size());
        for (std::size_t k = 0; k < cks.size(); ++k) {
          if (m_.columns[e][cks[k]]) c.set(k, true);
        }
        A.push_back(std::move(c));
      }
      BitVec b(cks.size());
      for (std::size_t k = 0; k < cks.size(); ++k) b.set(k, s[cks[k]]);
      if (b.none()) return std::vector<std::size_t>{};
      // Cheapest one- or two-error explanation when one exists.
      double best = std::numeric_limits<double>::infinity();
      std::vector<std::size_t> pick;
      for (std::size_t j = 0; j < A.size(); ++j) {
        if (A[j] == b && m_.weights[cols[j]] < best) {
          best = m_.weights[cols[j]];
          pick = {cols[j]};
        }
      }
      if (pick.empty() && A.size() <= kPairLimit) {
        for (std::size_t j = 0; j < A.size(); ++j) {
          BitVec rest = b;
          rest ^= A[j];
          for (std::size_t l = j + 1; l < A.size(); ++l) {
            const double w = m_.weights[cols[j]] + m_.weights[cols[l]];
            if (A[l] == rest && w < best) {
              best = w;
              pick = {cols[j], cols[l]};
            }
          }
        }
      }
      if (!pick.empty()) return pick;
      auto x = gf2::solve_columns(A, b);
      if (!x) return std::nullopt;
      std::vector<std::size_t> out;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if ((*x)[j]) out.push_back(cols[j]);
      }
      return out;
    };

    std::vector<std::size_t> correction;
    std::vector<char> valid(r, 0);  // indexed by root
    while (true) {
      // Collect roots of invalid clusters, find the smallest by check count.
      std::vector<std::size_t> roots;
      for (std::size_t i = 0; i < r; ++i) {
        if (owner[i] != r && find(owner[i]) == owner[i] && !valid[owner[i]]) roots.push_back(owner[i]);
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      std::vector<std::size_t> invalid;
      for (auto root : roots) {
        const auto cks = checks_in(root);
        if (interior_solution(cks)) {
          valid[root] = 1;
        } else {
          invalid.push_back(root);
        }
      }
      if (invalid.empty()) break;
      std::size_t grow = invalid[0];
      std::size_t best = checks_in(grow).size();
      for (auto root : invalid) {
        const std::size_t sz = checks_in(root).size();
        if (sz < best) {
          best = sz;
          grow = root;
        }
      }
      // Half-step growth along every error touching the cluster.
      const auto cks = checks_in(grow);
      std::vector<std::size_t> full;
      for (auto i : cks) {
        for (auto e : errors_of_[i]) {
          if (absorbed[e]) continue;
          if (++growth[e] >= 2) {
            absorbed[e] = 1;
            full.push_back(e);
          }
        }
      }
      std::stable_sort(full.begin(), full.end(), [&](std::size_t a, std::size_t b) { return m_.weights[a] < m_.weights[b]; });
      absorbed_seq.insert(absorbed_seq.end(), full.begin(), full.end());
      for (auto e : full) {
        for (auto i : checks_of_[e]) {
          if (owner[i] == r) {
            owner[i] = i;
            parent[i] = i;
            valid[i] = 0;
          }
          const std::size_t a = find(grow);
          const std::size_t b = find(owner[i]);
          if (a != b) {
            const std::size_t lo = std::min(a, b);
            const std::size_t hi = std::max(a, b);
            parent[hi] = lo;
            valid[lo] = 0;
          }
        }
      }
      valid[find(grow)] = 0;
    }
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < r; ++i) {
      if (owner[i] != r && find(owner[i]) == owner[i]) roots.push_back(i);
    }
    for (auto root : roots) {
      auto sol = interior_solution(checks_in(root));
      correction.insert(correction.end(), sol->begin(), sol->end());
    }
    return compose_errors(m_, correction);
  }

 private:
  const DecodingModel m_;
  std::vector<std::vector<std::size_t>> checks_of_;
  std::vector<std::vector<std::size_t>> errors_of_;
  static constexpr std::size_t kPairLimit = 512;
};

// ---------------------------------------------------------------------------

class MatchingDecoder : public Decoder {
 public:
  explicit MatchingDecoder(const DecodingModel& m) : m_(m) {
    const std::size_t r = m.r;
    boundary_ = r;
    adj_.resize(r + 1);
    // Best edge per node pair.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> best;
    for (std::size_t e = 0; e < m.num_errors(); ++e) {
      const auto& col = m.columns[e];
      const std::size_t w = col.popcount();
      // Y is decoded as its X and Z parts.
      if (e % 3 == 2) continue;
      if (w > 2) {
        throw ConfigError("mwpm decoder: a single-qubit " + std::string(1, pauli_char(kLetters[e % 3])) +
                          " error on qubit " + std::to_string(e / 3) + " flips " + std::to_string(w) +
                          " checks; matching needs at most 2");
      }
      if (w == 0) continue;
      std::vector<std::size_t> ends;
      for (std::size_t i = 0; i < r; ++i) {
        if (col[i]) ends.push_back(i);
      }
      const std::pair<std::size_t, std::size_t> key = w == 2 ? std::make_pair(ends[0], ends[1]) : std::make_pair(ends[0], boundary_);
      auto it = best.find(key);
      if (it == best.end() || m.weights[e] < m.weights[it->second]) best[key] = e;
    }
    for (const auto& [key, e] : best) {
      adj_[key.first].push_back({key.second, e});
      adj_[key.second].push_back({key.first, e});
    }
  }

  std::string name() const override { return "mwpm"; }

  PauliString decode(const BitVec& s) const override {
    std::vector<std::size_t> defects;
    for (std::size_t i = 0; i < m_.r; ++i) {
      if (s[i]) defects.push_back(i);
    }
    const std::size_t k = defects.size();
    if (k == 0) return PauliString(m_.n);
    // Shortest paths from each defect.
    std::vector<std::vector<double>> dist(k);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pred(k);
    for (std::size_t a = 0; a < k; ++a) dijkstra(defects[a], dist[a], pred[a]);
    const double inf = std::numeric_limits<double>::infinity();
    auto pair_cost = [&](std::size_t a, std::size_t b) { return dist[a][defects[b]]; };
    auto bnd_cost = [&](std::size_t a) { return dist[a][boundary_]; };

    std::vector<std::pair<std::size_t, std::size_t>> match;  // (a, b) with b == k for boundary
    if (k <= 14) {
      const std::size_t full = (std::size_t{1} << k) - 1;
      std::vector<double> f(full + 1, inf);
      std::vector<std::size_t> choice(full + 1, k);
      f[0] = 0;
      for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::size_t a = static_cast<std::size_t>(std::countr_zero(mask));
        const std::size_t rest = mask & ~(std::size_t{1} << a);
        double best = f[rest] + bnd_cost(a);
        std::size_t pick = k;
        for (std::size_t b = a + 1; b < k; ++b) {
          if (!(rest >> b & 1u)) continue;
          const double c = f[rest & ~(std::size_t{1} << b)] + pair_cost(a, b);
          if (c < best) {
            best = c;
            pick = b;
          }
        }
        f[mask] = best;
        choice[mask] = pick;
      }
      if (f[full] == inf) throw ContractError("mwpm decoder: syndrome " + s.str() + " cannot be matched");
      std::size_t mask = full;
      while (mask) {
        const std::size_t a = static_cast<std::size_t>(std::countr_zero(mask));
        const std::size_t b = choice[mask];
        match.push_back({a, b});
        mask &= ~(std::size_t{1} << a);
        if (b < k) mask &= ~(std::size_t{1} << b);
      }
    } else {
      std::vector<char> used(k, 0);
      for (std::size_t left = k; left > 0;) {
        double best = inf;
        std::pair<std::size_t, std::size_t> pick{k, k};
        for (std::size_t a = 0; a < k; ++a) {
          if (used[a]) continue;
          if (bnd_cost(a) < best) {
            best = bnd_cost(a);
            pick = {a, k};
          }
          for (std::size_t b = a + 1; b < k; ++b) {
            if (!used[b] && pair_cost(a, b) < best) {
              best = pair_cost(a, b);
              pick = {a, b};
            }
          }
        }
        if (best == inf) throw ContractError("mwpm decoder: syndrome " + s.str() + " cannot be matched");
        match.push_back(pick);
        used[pick.first] = 1;
        --left;
        if (pick.second < k) {
          used[pick.second] = 1;
          --left;
        }
      }
    }
    std::vector<std::size_t> errs;
    for (const auto& [a, b] : match) {
      std::size_t node = b < k ? defects[b] : boundary_;
      while (node != defects[a]) {
        const auto [prev, e] = pred[a][node];
        errs.push_back(e);
        node = prev;
      }
    }
    return compose_errors(m_, errs);
  }

 private:
  void dijkstra(std::size_t src, std::vector<double>& dist, std::vector<std::pair<std::size_t, std::size_t>>& pred) const {
    const std::size_t nn = adj_.size();
    dist.assign(nn, std::numeric_limits<double>::infinity());
    pred.assign(nn, {nn, 0});
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      // Paths may end at the boundary but never pass through it.
      if (u == boundary_) continue;
      for (const auto& [v, e] : adj_[u]) {
        const double nd = d + m_.weights[e];
        if (nd < dist[v]) {
          dist[v] = nd;
          pred[v] = {u, e};
          pq.push({nd, v});
        }
      }
    }
  }

  const DecodingModel m_;
  std::size_t boundary_ = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
};

// ---------------------------------------------------------------------------

class BpOsdDecoder : public Decoder {
 public:
  BpOsdDecoder(const DecodingModel& m, int iters) : m_(m), iters_(iters) {
    if (iters < 0) throw ConfigError("bposd: iteration count must be non-negative");
    // Binary variables are the X and Z parts of each qubit; Y is both.
    for (std::size_t e = 0; e < m.num_errors(); ++e) {
      if (e % 3 == 2 || m.columns[e].none()) continue;
      vars_.push_back(e);
    }
    var_checks_.resize(vars_.size());
    check_vars_.resize(m.r);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      for (std::size_t i = 0; i < m.r; ++i) {
        if (m.columns[vars_[v]][i]) {
          var_checks_[v].push_back(edges_.size());
          check_vars_[i].push_back(edges_.size());
          edges_.push_back({i, v});
        }
      }
    }
    prior_.resize(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      const double p = std::min(0.5, 2.0 * std::exp(-m.weights[vars_[v]]));
      prior_[v] = std::log((1 - p) / p);
    }
  }

  std::string name() const override { return "bposd"; }

  PauliString decode(const BitVec& s) const override {
    if (s.none()) return PauliString(m_.n);
    const std::size_t ne = edges_.size();
    std::vector<double> v2c(ne);
    std::vector<double> c2v(ne, 0.0);
    std::vector<double> post(prior_);
    for (std::size_t k = 0; k < ne; ++k) v2c[k] = prior_[edges_[k].var];
    std::vector<char> hard(vars_.size(), 0);
    bool converged = false;
    for (int it = 0; it < iters_; ++it) {
      for (std::size_t i = 0; i < m_.r; ++i) {
        const auto& ek = check_vars_[i];
        // Normalized min-sum: sign product and the two smallest magnitudes.
        double m1 = std::numeric_limits<double>::infinity();
        double m2 = m1;
        std::size_t arg = ek.size();
        bool sign = s[i];
        for (std::size_t a = 0; a < ek.size(); ++a) {
          const double x = v2c[ek[a]];
          sign ^= x < 0;
          const double ax = std::fabs(x);
          if (ax < m1) {
            m2 = m1;
            m1 = ax;
            arg = a;
          } else if (ax < m2) {
            m2 = ax;
          }
        }
        for (std::size_t a = 0; a < ek.size(); ++a) {
          const double x = v2c[ek[a]];
          const bool sg = sign ^ (x < 0);
          const double mag = kScale * (a == arg ? m2 : m1);
          c2v[ek[a]] = sg ? -mag : mag;
        }
      }
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        double total = prior_[v];
        for (auto k : var_checks_[v]) total += c2v[k];
        post[v] = total;
        for (auto k : var_checks_[v]) v2c[k] = total - c2v[k];
        hard[v] = total < 0;
      }
      BitVec syn(m_.r);
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (hard[v]) syn ^= m_.columns[vars_[v]];
      }
      if (syn == s) {
        converged = true;
        break;
      }
    }
    // OSD-0 on the most likely columns first.
    std::vector<std::size_t> order(vars_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return post[a] < post[b]; });
    std::vector<BitVec> cols;
    cols.reserve(order.size());
    for (auto v : order) cols.push_back(m_.columns[vars_[v]]);
    auto x = gf2::solve_columns(cols, s);
    if (!x) throw ContractError("bposd decoder: syndrome " + s.str() + " is outside the column space");
    std::vector<std::size_t> errs;
    for (std::size_t j = 0; j < order.size(); ++j) {
      if ((*x)[j]) errs.push_back(vars_[order[j]]);
    }
    // A converged BP guess can still be a heavy degenerate solution; keep
    // whichever of the two is more likely.
    if (converged) {
      std::vector<std::size_t> bp;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (hard[v]) bp.push_back(vars_[v]);
      }
      if (total_weight(bp) <= total_weight(errs)) return compose_errors(m_, bp);
    }
    return compose_errors(m_, errs);
  }

 private:
  struct Edge {
    std::size_t check;
    std::size_t var;
  };
  double total_weight(const std::vector<std::size_t>& errs) const {
    double w = 0;
    for (auto e : errs) w += m_.weights[e];
    return w;
  }

  static constexpr double kScale = 0.625;
  const DecodingModel m_;
  int iters_;
  std::vector<std::size_t> vars_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> var_checks_;
  std::vector<std::vector<std::size_t>> check_vars_;
  std::vector<double> prior_;
};

}  // namespace

std::unique_ptr<Decoder> ml_lookup_decoder(const DecodingModel& m) { return std::make_unique<MlDecoder>(m); }
std::unique_ptr<Decoder> union_find_decoder(const DecodingModel& m) { return std::make_unique<UnionFindDecoder>(m); }
std::unique_ptr<Decoder> matching_decoder(const DecodingModel& m) { return std::make_unique<MatchingDecoder>(m); }
std::unique_ptr<Decoder> bp_osd0_decoder(const DecodingModel& m, int iters) {
  return std::make_unique<BpOsdDecoder>(m, iters);
}

const std::vector<std::string>& decoder_names() {
  static const std::vector<std::string> names{"ml", "uf", "mwpm", "bposd"};
  return names;
}

std::unique_ptr<Decoder> make_decoder(const std::string& name, const DecodingModel& m) {
  if (name == "ml") return ml_lookup_decoder(m);
  if (name == "uf") return union_find_decoder(m);
  if (name == "mwpm") return matching_decoder(m);
  if (name == "bposd") return bp_osd0_decoder(m);
  std::string all;
  for (const auto& n : decoder_names()) all += (all.empty() ? "" : ", ") + n;
  throw ConfigError("unknown decoder \"" + name + "\" (available: " + all + ")");
}

}  // namespace asyn
