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

// Statistical checks around the estimator: the oversampling inequality on
// sums of independent bounded variables, and the total expected edge-test
// mass of a graph.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mmest/estimator.hpp"
#include "mmest/graph.hpp"
#include "mmest/prf.hpp"
#include "mmest/stats.hpp"
#include "mmest/stream.hpp"

namespace mmest {

// X = sum of independent terms, each `value` with probability p, else 0.
struct BernoulliTerm {
  double value = 1.0;
  double p = 0.0;
};

using BoundedSum = std::vector<BernoulliTerm>;

inline BoundedSum bernoulli_sum(std::size_t count, double p, double value = 1.0) {
  return BoundedSum(count, BernoulliTerm{value, p});
}

inline double expectation(const BoundedSum& x) {
  double e = 0.0;
  for (const auto& t : x) e += t.value * t.p;
  return e;
}

struct OversamplingReport {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;       // X >= delta
  std::uint64_t hits_bar = 0;   // mean of c copies >= delta
  double p_hat = 0.0;
  double p_bar_hat = 0.0;
  double se = 0.0;
  double se_bar = 0.0;
  Interval ci;
  Interval ci_bar;
};

// Estimates P[X >= delta] and P[mean of c iid copies of X >= delta].
inline OversamplingReport oversampling_check(const BoundedSum& x, double delta, int c,
                                             std::uint64_t trials, std::uint64_t seed) {
  for (const auto& t : x)
    if (!(t.value >= 0.0 && t.value <= 1.0 && t.p >= 0.0 && t.p <= 1.0))
      throw std::invalid_argument("oversampling: terms must be [0,1]-valued");
  if (expectation(x) > delta / 3.0 + 1e-12)
    throw std::invalid_argument("oversampling: E[X] exceeds delta/3");
  if (c < 1 || trials == 0) throw std::invalid_argument("oversampling: c and trials positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] {
    double s = 0.0;
    for (const auto& t : x)
      if (u(rng) < t.p) s += t.value;
    return s;
  };
  OversamplingReport r;
  r.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    if (reaches(draw(), delta)) ++r.hits;
    double s = 0.0;
    for (int k = 0; k < c; ++k) s += draw();
    if (reaches(s / c, delta)) ++r.hits_bar;
  }
  const double n = static_cast<double>(trials);
  r.p_hat = static_cast<double>(r.hits) / n;
  r.p_bar_hat = static_cast<double>(r.hits_bar) / n;
  r.se = proportion_se(r.hits, trials);
  r.se_bar = proportion_se(r.hits_bar, trials);
  r.ci = wilson(r.hits, trials);
  r.ci_bar = wilson(r.hits_bar, trials);
  return r;
}

// Sum over edges of the edge-test weight, averaged over `sweeps` passes;
// estimates the sum over edges of E[M_e].
inline double edge_mass(const Graph& g, const EstimatorConfig& cfg, int sweeps,
                        std::uint64_t seed) {
  if (sweeps < 1) throw std::invalid_argument("edge_mass: sweeps >= 1");
  double total = 0.0;
  for (int s = 0; s < sweeps; ++s) {
    EdgeStream st(g, StreamMode::kIid, derive_seed(seed, static_cast<std::uint64_t>(s), 7));
    for (const Edge& e : g.edges()) total += etest(e.u, e.v, st, cfg).weight;
  }
  return total / sweeps;
}

}  // namespace mmest
