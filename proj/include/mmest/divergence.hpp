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

// Bernoulli KL divergence, Bernoulli padding, and measurements of how far
// level tests on prefix-conditioned permutation streams drift from IID.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "mmest/estimator.hpp"
#include "mmest/graph.hpp"
#include "mmest/prf.hpp"
#include "mmest/stats.hpp"
#include "mmest/stream.hpp"

namespace mmest {

// KL(Ber(p) || Ber(q)) in nats, with 0 log 0 = 0.
inline double bernoulli_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("bernoulli_kl: parameters must lie in [0,1]");
  auto term = [](double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0) return std::numeric_limits<double>::infinity();
    return a * std::log(a / b);
  };
  return term(p, q) + term(1.0 - p, 1.0 - q);
}

// 16 eps^2 / (p (1-p)).
inline double kl_shift_bound(double p, double eps) { return 16.0 * eps * eps / (p * (1.0 - p)); }

// Clamp p into [theta, 1 - theta].
inline double pad_bernoulli(double p, double theta) {
  if (!(theta > 0.0 && theta < 0.5)) throw std::invalid_argument("pad_bernoulli: theta in (0,1/2)");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pad_bernoulli: p in [0,1]");
  return std::clamp(p, theta, 1.0 - theta);
}

enum class CouplingArm { kPermutation, kIidControl };

struct CouplingReport {
  int level = 1;
  std::uint64_t t = 0;
  std::uint64_t trials = 0;
  std::uint64_t pass_iid = 0;
  std::uint64_t pass_other = 0;
  double p_iid = 0.0;
  double p_other = 0.0;
  double tvd = 0.0;          // |p_iid - p_other| for pass/fail outcomes
  Interval ci;               // bootstrap interval of the tvd
  double noise_floor = 0.0;  // 2 x bootstrap sd of the signed difference
  bool exact = false;
};

// Largest prefix length allowed at this level: m/2 - 2 c^{level-1} m/d.
inline double coupling_max_prefix(const EstimatorConfig& cfg, int level) {
  const double md = static_cast<double>(cfg.m) / static_cast<double>(cfg.d);
  return static_cast<double>(cfg.m) / 2.0 - 2.0 * std::pow(cfg.c, level - 1) * md;
}

// Uniform t-subset of edge ids in uniform order.
inline std::vector<EdgeId> random_prefix(const Graph& g, std::uint64_t t, std::uint64_t seed) {
  if (t > g.m()) throw std::invalid_argument("prefix longer than the edge set");
  std::vector<EdgeId> ids(g.m());
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  PrfStream rng(seed, Domain::kPrefix);
  for (std::uint64_t i = 0; i < t; ++i) {
    const std::uint64_t j = i + rng.below(ids.size() - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(t);
  return ids;
}

namespace detail {

inline void check_coupling_args(const EstimatorConfig& cfg, int level, std::uint64_t t,
                                std::size_t prefix_size) {
  cfg.validate();
  if (level < 1 || level > cfg.J + 1) throw std::invalid_argument("coupling: level out of range");
  if (prefix_size != t) throw std::invalid_argument("coupling: prefix length differs from t");
  if (static_cast<double>(t) > coupling_max_prefix(cfg, level))
    throw std::invalid_argument("coupling: t exceeds m/2 - 2 c^j m/d");
}

inline void finish_report(CouplingReport& r, std::uint64_t seed) {
  const double n = static_cast<double>(r.trials);
  r.p_iid = static_cast<double>(r.pass_iid) / n;
  r.p_other = static_cast<double>(r.pass_other) / n;
  r.tvd = std::abs(r.p_iid - r.p_other);
  // Parametric bootstrap on the two pass counts.
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::uint64_t> a(r.trials, r.p_iid), b(r.trials, r.p_other);
  std::vector<double> tv, diff;
  for (int i = 0; i < 2000; ++i) {
    const double d = (static_cast<double>(a(rng)) - static_cast<double>(b(rng))) / n;
    diff.push_back(d);
    tv.push_back(std::abs(d));
  }
  r.ci = {quantile(tv, 0.025), quantile(tv, 0.975)};
  r.noise_floor = 2.0 * std::sqrt(variance(diff));
}

}  // namespace detail

// Runs the level-`level` vtest on v `trials` times over fresh IID streams and
// `trials` times over the other arm: permutation streams whose first t
// emissions are `prefix` (kPermutation), or a second IID arm (kIidControl).
inline CouplingReport stream_coupling_experiment(const Graph& g, Vertex v, int level,
                                                 const std::vector<EdgeId>& prefix,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 const EstimatorConfig& cfg,
                                                 CouplingArm arm = CouplingArm::kPermutation) {
  const std::uint64_t t = arm == CouplingArm::kPermutation ? prefix.size() : 0;
  detail::check_coupling_args(cfg, level, t, arm == CouplingArm::kPermutation ? prefix.size() : 0);
  if (trials == 0) throw std::invalid_argument("coupling: trials must be positive");
  if (v >= g.n()) throw std::invalid_argument("coupling: vertex out of range");
  CouplingReport r;
  r.level = level;
  r.t = t;
  r.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    EdgeStream a(g, StreamMode::kIid, derive_seed(seed, i, 1));
    r.pass_iid += vtest(level, v, a, cfg).passed;
    if (arm == CouplingArm::kPermutation) {
      EdgeStream b = EdgeStream::with_prefix(g, prefix, derive_seed(seed, i, 2));
      r.pass_other += vtest(level, v, b, cfg).passed;
    } else {
      EdgeStream b(g, StreamMode::kIid, derive_seed(seed, i, 2));
      r.pass_other += vtest(level, v, b, cfg).passed;
    }
  }
  detail::finish_report(r, derive_seed(seed, trials, 3));
  return r;
}

inline constexpr std::size_t kExactCouplingMaxEdges = 8;

// Exact level-1 pass probabilities by enumerating every IID draw sequence and
// every ordering of the non-prefix edges.
inline CouplingReport exact_coupling(const Graph& g, Vertex v, const std::vector<EdgeId>& prefix,
                                     const EstimatorConfig& cfg) {
  if (g.m() > kExactCouplingMaxEdges) throw std::invalid_argument("exact coupling needs m <= 8");
  detail::check_coupling_args(cfg, 1, prefix.size(), prefix.size());
  const detail::LevelTables tab(cfg, 1);
  const std::uint64_t scans = tab.scans[1];
  CouplingReport r;
  r.level = 1;
  r.t = prefix.size();
  r.exact = true;

  // IID: all m^scans sequences, equally likely.
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < scans; ++i) total *= g.m();
  std::uint64_t pass = 0;
  std::vector<EdgeId> seq(scans, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (auto& e : seq) {
      e = static_cast<EdgeId>(x % g.m());
      x /= g.m();
    }
    ScriptedStream s(g, seq);
    pass += detail::vtest_impl(1, v, s, tab).passed;
  }
  r.p_iid = static_cast<double>(pass) / static_cast<double>(total);

  // Permutation: all orders of the remaining edges after the prefix.
  std::vector<char> used(g.m(), 0);
  for (EdgeId e : prefix) used[e] = 1;
  std::vector<EdgeId> rest;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!used[e]) rest.push_back(e);
  std::uint64_t perms = 0, ppass = 0;
  do {
    ScriptedStream s(g, rest);
    ppass += detail::vtest_impl(1, v, s, tab).passed;
    ++perms;
  } while (std::next_permutation(rest.begin(), rest.end()));
  r.p_other = static_cast<double>(ppass) / static_cast<double>(perms);
  r.tvd = std::abs(r.p_iid - r.p_other);
  r.ci = {r.tvd, r.tvd};
  return r;
}

}  // namespace mmest
