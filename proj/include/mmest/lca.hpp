// Copyright 2026 The mmest Authors
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

#pragma once

// Local computation oracles for a fixed approximate maximum matching.
//
// Graph access goes through degree and k-th neighbor probes; every call
// carries a ledger. Randomness is consistent across calls: the top-level
// test of vertex u at level i reads the stream PRF(master, vertex, u, i), and
// the candidate bit of edge e reads PRF(master, edge, e).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmest/estimator.hpp"
#include "mmest/graph.hpp"
#include "mmest/peeling.hpp"
#include "mmest/prf.hpp"

namespace mmest {

struct OracleConfig {
  double c = 2.0;
  double delta = 0.5;
  std::uint64_t d = 1;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  int J = 0;
  double lambda = 400.0;
  std::uint64_t master_seed = 0;
  double query_budget_factor = 8.0;  // K in K * d * ln n

  void validate() const {
    if (!(c >= 2.0)) throw std::invalid_argument("oracle: c must be >= 2");
    if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("oracle: delta in (0, 1/2]");
    if (!(lambda >= 100.0 * c * c)) throw std::invalid_argument("oracle: lambda must be >= 100 c^2");
    if (d == 0 || m == 0) throw std::invalid_argument("oracle: empty graph");
  }
};

inline OracleConfig make_oracle_config(const Graph& g, std::uint64_t master_seed,
                                       double c = 2.0, double delta = 0.5,
                                       std::optional<double> lambda = {}) {
  OracleConfig cfg;
  cfg.c = c;
  cfg.delta = delta;
  cfg.d = std::max<std::uint64_t>(g.degree_bound(), 1);
  cfg.m = g.m();
  cfg.n = g.n();
  cfg.J = level_count_J(c, static_cast<double>(cfg.d));
  cfg.lambda = lambda.value_or(100.0 * c * c);
  cfg.master_seed = master_seed;
  return cfg;
}

struct QueryLedger {
  std::uint64_t probes = 0;          // neighbor accesses
  std::uint64_t degree_lookups = 0;  // degree queries, tallied apart
  bool over_soft_budget = false;
};

class LcaOracle {
 public:
  LcaOracle(const Graph& g, OracleConfig cfg) : g_(&g), cfg_(cfg) {
    cfg_.validate();
    const long double md = static_cast<long double>(cfg_.m) / static_cast<long double>(cfg_.d);
    for (int level = 0; level <= cfg_.J + 2; ++level) {
      const long double cj = std::pow(static_cast<long double>(cfg_.c), level - 1);
      trials_.push_back(level == 0 ? 0 : static_cast<std::uint64_t>(std::floor(cj * md)));
      pbound_.push_back(static_cast<double>(2.0L * cj));
      neg_pow_.push_back(std::pow(cfg_.c, -level));
    }
    double top = 0.0;
    for (int i = 0; i <= cfg_.J + 1; ++i) top += std::pow(cfg_.c, i);
    max_weight_ = top / static_cast<double>(cfg_.d);
  }

  const OracleConfig& config() const { return cfg_; }
  const Graph& graph() const { return *g_; }

  // Level test drawing all randomness from `ctx`.
  bool lca_vtest(int level, Vertex v, PrfStream& ctx, QueryLedger& led) const {
    if (level == 0) return true;
    if (level > cfg_.J + 1) throw std::invalid_argument("lca_vtest: level out of range");
    const int j = level - 1;
    const std::uint64_t start = led.probes;
    ++led.degree_lookups;
    const std::size_t deg = g_->degree(v);
    const double p = static_cast<double>(deg) / static_cast<double>(cfg_.m);
    const std::uint64_t D = sample_binomial(trials_[level], p, ctx);
    double acc = 0.0;
    bool passed = true;
    for (std::uint64_t k = 0; k < D && passed; ++k) {
      const std::size_t idx = ctx.below(deg);
      const Vertex w = g_->neighbor(v, idx);
      ++led.probes;
      for (int i = 0; i <= j; ++i) {
        if (i > 0 && !lca_vtest(i, w, ctx, led)) break;
        acc += neg_pow_[j - i];
        if (reaches(acc, cfg_.delta)) {
          passed = false;
          break;
        }
      }
    }
    const std::uint64_t used = led.probes - start;
    if (static_cast<double>(used) > pbound_[level] * (1.0 + 1e-9)) {
      throw InvariantViolation("lca_vtest level " + std::to_string(level) + " used " +
                               std::to_string(used) + " probes > " +
                               std::to_string(pbound_[level]));
    }
    return passed;
  }

  // Top-level test of v at `level` with the vertex's own seed.
  bool lca_vtest(int level, Vertex v, QueryLedger& led) const {
    PrfStream ctx(cfg_.master_seed, Domain::kVertex, v, static_cast<std::uint64_t>(level));
    return lca_vtest(level, v, ctx, led);
  }

  double lca_etest(EdgeId e, QueryLedger& led) const {
    const Edge& x = g_->edge(e);
    const double inv_d = 1.0 / static_cast<double>(cfg_.d);
    double w = inv_d;
    const std::uint64_t start = led.probes;
    double ci = 1.0;
    for (int i = 1; i <= cfg_.J + 1; ++i) {
      ci *= cfg_.c;
      if (lca_vtest(i, x.u, led) && lca_vtest(i, x.v, led)) {
        w += ci * inv_d;
      } else {
        break;
      }
    }
    const std::uint64_t used = led.probes - start;
    if (static_cast<double>(used) > 4.0 * w * static_cast<double>(cfg_.d) * (1.0 + 1e-9)) {
      throw InvariantViolation("lca_etest used " + std::to_string(used) + " probes > 4 M_e d");
    }
    if (w > max_weight_ * (1.0 + 1e-12)) throw InvariantViolation("lca_etest weight too large");
    return w;
  }

  bool matching_candidate(EdgeId e, QueryLedger& led) const {
    const double w = lca_etest(e, led);
    return candidate_from_weight(e, w);
  }

  bool oracle_edge(EdgeId e, QueryLedger& led) const {
    const std::uint64_t start = led.probes;
    bool out = oracle_edge_impl(e, led);
    check_soft_budget(led, led.probes - start);
    return out;
  }

  bool oracle_vertex(Vertex v, QueryLedger& led) const {
    const std::uint64_t start = led.probes;
    ++led.degree_lookups;
    bool out = false;
    for (std::size_t k = 0; k < g_->degree(v); ++k) {
      const EdgeId e = g_->incident_edge(v, k);
      ++led.probes;
      if (matching_candidate(e, led)) {
        out = oracle_edge_impl(e, led);
        break;
      }
    }
    check_soft_budget(led, led.probes - start);
    return out;
  }

  // K * d * ln n, the per-query soft budget.
  double soft_budget() const {
    const double ln = std::log(std::max<double>(3.0, static_cast<double>(cfg_.n)));
    return cfg_.query_budget_factor * static_cast<double>(cfg_.d) * ln;
  }

  bool candidate_from_weight(EdgeId e, double w) const {
    PrfStream coin(cfg_.master_seed, Domain::kEdge, e);
    return coin.uniform() < w / (10.0 * cfg_.lambda);
  }

  // Answers oracle_edge for every edge at once. Per-edge candidate bits and
  // edge-test probe counts are computed once and reused; the answers and
  // per-query probe counts equal those of independent oracle_edge calls.
  struct Sweep {
    std::vector<char> candidate;
    std::vector<std::uint64_t> etest_probes;
    std::vector<char> in_matching;
    std::vector<std::uint64_t> query_probes;
  };

  Sweep sweep_all_edges() const {
    Sweep s;
    const std::size_t m = g_->m();
    s.candidate.resize(m);
    s.etest_probes.resize(m);
    s.in_matching.assign(m, 0);
    s.query_probes.assign(m, 0);
    for (std::size_t e = 0; e < m; ++e) {
      QueryLedger led;
      const double w = lca_etest(EdgeId(e), led);
      s.candidate[e] = candidate_from_weight(EdgeId(e), w);
      s.etest_probes[e] = led.probes;
    }
    for (std::size_t e = 0; e < m; ++e) {
      std::uint64_t probes = s.etest_probes[e];
      bool in = s.candidate[e] != 0;
      if (in) {
        const Edge& x = g_->edge(EdgeId(e));
        for (Vertex end : {x.u, x.v}) {
          if (!in) break;
          for (EdgeId f : g_->incident(end)) {
            if (f == e) continue;
            probes += 1 + s.etest_probes[f];
            if (s.candidate[f]) {
              in = false;
              break;
            }
          }
        }
      }
      s.in_matching[e] = in;
      s.query_probes[e] = probes;
    }
    return s;
  }

 private:
  bool oracle_edge_impl(EdgeId e, QueryLedger& led) const {
    if (!matching_candidate(e, led)) return false;
    const Edge& x = g_->edge(e);
    for (Vertex end : {x.u, x.v}) {
      ++led.degree_lookups;
      for (std::size_t k = 0; k < g_->degree(end); ++k) {
        const EdgeId f = g_->incident_edge(end, k);
        if (f == e) continue;
        ++led.probes;
        if (matching_candidate(f, led)) return false;
      }
    }
    return true;
  }

  void check_soft_budget(QueryLedger& led, std::uint64_t used) const {
    const double b = soft_budget();
    if (static_cast<double>(used) > b) led.over_soft_budget = true;
    if (static_cast<double>(used) > 10.0 * b) {
      throw InvariantViolation("oracle query used " + std::to_string(used) +
                               " probes > 10 K d ln n");
    }
  }

  const Graph* g_;
  OracleConfig cfg_;
  std::vector<std::uint64_t> trials_;
  std::vector<double> pbound_;
  std::vector<double> neg_pow_;
  double max_weight_ = 0.0;
};

}  // namespace mmest
