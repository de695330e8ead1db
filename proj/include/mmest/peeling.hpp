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

// Offline peeling: builds a fractional matching M and a vertex cover C with
// full access to the graph.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mmest/graph.hpp"

namespace mmest {

// Comparisons of accumulated loads against a threshold tolerate rounding in
// sums such as 1/6 + 1/6 + 1/6.
inline constexpr double kLoadTol = 1e-12;
inline bool reaches(double load, double threshold) {
  return load + kLoadTol >= threshold;
}

// floor(log_c d) for d >= 1, computed by repeated multiplication.
inline int floor_log(double c, double d) {
  if (!(c > 1.0)) throw std::invalid_argument("log base must exceed 1");
  if (d < 1.0) return 0;
  int k = 0;
  double p = c;
  while (p <= d * (1.0 + 1e-12)) {
    ++k;
    p *= c;
  }
  return k;
}

// max(0, floor(log_c d) - 1): the level count used by the edge test.
inline int level_count_J(double c, double d) {
  return std::max(0, floor_log(c, d) - 1);
}

struct PeelingConfig {
  double c = 2.0;
  double delta = 0.5;
  // Rounds minus one. Unset means floor(log_c d), which runs one round per
  // weight c^i/d that the edge test can assign (i = 0..J+1 of that test).
  std::optional<int> J;
};

inline int offline_rounds_minus_one(const PeelingConfig& cfg, std::size_t d) {
  if (cfg.J) return *cfg.J;
  return floor_log(cfg.c, static_cast<double>(std::max<std::size_t>(d, 1)));
}

struct PeelingResult {
  FractionalMatching matching;
  VertexCover cover;
  // Round in [1, J+1] at which v was peeled; J+2 if never.
  std::vector<int> round_peeled;
  std::vector<std::size_t> per_round_peels;
  int J = 0;
  double sum_weight = 0.0;
};

inline PeelingResult alg_global(const Graph& g, const PeelingConfig& cfg) {
  if (!(cfg.c > 1.0)) throw std::invalid_argument("peeling: c must exceed 1");
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("peeling: delta must be positive");
  if (cfg.J && *cfg.J < 0) throw std::invalid_argument("peeling: J must be >= 0");
  const std::size_t d = std::max<std::size_t>(g.degree_bound(), 1);
  PeelingResult r;
  r.J = offline_rounds_minus_one(cfg, d);
  r.matching.weights.assign(g.m(), 0.0);
  r.round_peeled.assign(g.n(), r.J + 2);
  std::vector<double> load(g.n(), 0.0);
  std::vector<EdgeId> alive(g.m());
  for (std::size_t e = 0; e < g.m(); ++e) alive[e] = EdgeId(e);
  std::vector<char> peeled(g.n(), 0);
  std::vector<Vertex> touched;
  double w = 1.0 / static_cast<double>(d);
  for (int round = 1; round <= r.J + 1; ++round) {
    touched.clear();
    for (EdgeId e : alive) {
      const Edge& x = g.edge(e);
      r.matching.weights[e] += w;
      load[x.u] += w;
      load[x.v] += w;
      touched.push_back(x.u);
      touched.push_back(x.v);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::size_t count = 0;
    for (Vertex v : touched) {
      if (reaches(load[v], cfg.delta)) {
        peeled[v] = 1;
        r.round_peeled[v] = round;
        r.cover.members.push_back(v);
        ++count;
      }
    }
    r.per_round_peels.push_back(count);
    std::erase_if(alive, [&](EdgeId e) {
      return peeled[g.edge(e).u] || peeled[g.edge(e).v];
    });
    w *= cfg.c;
  }
  std::sort(r.cover.members.begin(), r.cover.members.end());
  for (double x : r.matching.weights) r.sum_weight += x;
  return r;
}

// The load cap max((c+1) delta, 1).
inline double peeling_load_cap(const PeelingConfig& cfg) {
  return std::max((cfg.c + 1.0) * cfg.delta, 1.0);
}

}  // namespace mmest
