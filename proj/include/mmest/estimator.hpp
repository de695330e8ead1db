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

// Sample-based matching-size estimation: level tests with early stopping,
// the edge test, the doubling driver for IID streams, and the truncated
// single-pass variant for random-permutation streams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmest/graph.hpp"
#include "mmest/peeling.hpp"
#include "mmest/stream.hpp"

namespace mmest {

// A probability-one bound was broken. Never caught inside the library.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EstimatorConfig {
  double c = 2.0;
  double delta = 0.5;
  int J = 0;
  std::uint64_t d = 1;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t sample_budget = 0;
  std::optional<int> truncation;

  // Parameter ranges under which the sample bounds are guaranteed.
  void validate() const {
    if (!(c >= 2.0)) throw std::invalid_argument("estimator: c must be >= 2");
    if (!(delta > 0.0 && delta <= 0.5))
      throw std::invalid_argument("estimator: delta must lie in (0, 1/2]");
    if (d == 0 || m == 0) throw std::invalid_argument("estimator: d and m must be positive");
    if (J < 0) throw std::invalid_argument("estimator: J must be >= 0");
  }
};

// max(0, J - ceil(2 log_c(ln n))); the ceiling term is clamped at 0.
inline int truncation_level(int J, double c, std::uint64_t n) {
  const double ln = std::log(static_cast<double>(std::max<std::uint64_t>(n, 1)));
  int cut = 0;
  if (ln > 1.0) cut = static_cast<int>(std::ceil(2.0 * std::log(ln) / std::log(c) - 1e-12));
  return std::max(0, J - std::max(0, cut));
}

// d defaults to n, the budget to m.
inline EstimatorConfig make_estimator_config(const Graph& g, double c = 2.0,
                                             double delta = 0.5,
                                             std::optional<std::uint64_t> d = {},
                                             std::optional<std::uint64_t> budget = {}) {
  EstimatorConfig cfg;
  cfg.c = c;
  cfg.delta = delta;
  cfg.n = g.n();
  cfg.m = g.m();
  cfg.d = d.value_or(std::max<std::uint64_t>(g.n(), 1));
  if (cfg.d < g.max_degree()) throw std::invalid_argument("estimator: d below max degree");
  cfg.J = level_count_J(c, static_cast<double>(cfg.d));
  cfg.sample_budget = budget.value_or(g.m());
  return cfg;
}

struct TestOutcome {
  bool passed = true;
  std::uint64_t samples_used = 0;
  double s_final = 0.0;
};

struct EdgeWeightOutcome {
  double weight = 0.0;
  int level = 0;  // number of levels both endpoints passed
  std::uint64_t samples_used = 0;
};

// Per-thread tallies of how many bound checks ran.
struct InvariantCounters {
  std::uint64_t vtest_checks = 0;
  std::uint64_t etest_checks = 0;
};
inline InvariantCounters& invariant_counters() {
  thread_local InvariantCounters c;
  return c;
}

namespace detail {

// Precomputed per-level quantities for one configuration.
struct LevelTables {
  explicit LevelTables(const EstimatorConfig& cfg, int top) : cfg(cfg) {
    const int L = std::max(top, cfg.J + 1) + 1;
    const long double md =
        static_cast<long double>(cfg.m) / static_cast<long double>(cfg.d);
    for (int level = 0; level <= L; ++level) {
      const long double cj = std::pow(static_cast<long double>(cfg.c), level - 1);
      scans.push_back(level == 0 ? 0 : static_cast<std::uint64_t>(std::floor(cj * md)));
      vbound.push_back(static_cast<double>(2.0L * cj * md));
    }
    for (int k = 0; k <= L; ++k) neg_pow.push_back(std::pow(cfg.c, -k));
    double top_w = 0.0;
    for (int i = 0; i <= cfg.J + 1; ++i) top_w += std::pow(cfg.c, i);
    max_weight = top_w / static_cast<double>(cfg.d);
  }
  const EstimatorConfig& cfg;
  std::vector<std::uint64_t> scans;   // floor(c^{level-1} m/d)
  std::vector<double> vbound;         // 2 c^{level-1} m/d
  std::vector<double> neg_pow;        // c^{-k}
  double max_weight = 0.0;            // sum_{i=0}^{J+1} c^i/d
};

inline void fail_invariant(const std::string& what) { throw InvariantViolation(what); }

template <EdgeSource S>
TestOutcome vtest_impl(int level, Vertex v, S& s, const LevelTables& t) {
  TestOutcome out;
  if (level == 0) return out;
  const int j = level - 1;
  const std::uint64_t start = s.consumed();
  const std::uint64_t scans = t.scans[level];
  double acc = 0.0;
  for (std::uint64_t k = 0; k < scans && out.passed; ++k) {
    const StreamedEdge e = s.next();
    if (e.u != v && e.v != v) continue;
    const Vertex w = e.u == v ? e.v : e.u;
    for (int i = 0; i <= j; ++i) {
      if (i > 0 && !vtest_impl(i, w, s, t).passed) break;
      acc += t.neg_pow[j - i];
      if (reaches(acc, t.cfg.delta)) {
        out.passed = false;
        break;
      }
    }
  }
  out.samples_used = s.consumed() - start;
  out.s_final = acc;
  ++invariant_counters().vtest_checks;
  if (static_cast<double>(out.samples_used) > t.vbound[level] * (1.0 + 1e-9)) {
    fail_invariant("vtest level " + std::to_string(level) + " used " +
                   std::to_string(out.samples_used) + " samples > bound " +
                   std::to_string(t.vbound[level]));
  }
  if (out.passed == reaches(acc, t.cfg.delta)) {
    fail_invariant("vtest early-stop inconsistency at level " + std::to_string(level));
  }
  return out;
}

template <EdgeSource S>
EdgeWeightOutcome etest_impl(Vertex u, Vertex v, S& s, const LevelTables& t, int top) {
  const EstimatorConfig& cfg = t.cfg;
  EdgeWeightOutcome out;
  const double inv_d = 1.0 / static_cast<double>(cfg.d);
  out.weight = inv_d;
  const std::uint64_t start = s.consumed();
  double ci = 1.0;
  for (int i = 1; i <= top; ++i) {
    ci *= cfg.c;
    if (vtest_impl(i, u, s, t).passed && vtest_impl(i, v, s, t).passed) {
      out.weight += ci * inv_d;
      out.level = i;
    } else {
      break;
    }
  }
  out.samples_used = s.consumed() - start;
  ++invariant_counters().etest_checks;
  const double bound = 4.0 * out.weight * static_cast<double>(cfg.m);
  if (static_cast<double>(out.samples_used) > bound * (1.0 + 1e-9)) {
    fail_invariant("etest used " + std::to_string(out.samples_used) +
                   " samples > 4 M_e m = " + std::to_string(bound));
  }
  if (out.weight < inv_d * (1.0 - 1e-12) || out.weight > t.max_weight * (1.0 + 1e-12)) {
    fail_invariant("etest weight out of range");
  }
  return out;
}

}  // namespace detail

// Level-`level` vertex test (level = j+1 in [0, J+1]); level 0 passes for free.
template <EdgeSource S>
TestOutcome vtest(int level, Vertex v, S& s, const EstimatorConfig& cfg) {
  if (level < 0 || level > cfg.J + 1) throw std::invalid_argument("vtest: level out of range");
  const detail::LevelTables t(cfg, level);
  return detail::vtest_impl(level, v, s, t);
}

// Edge test over levels 1..J+1.
template <EdgeSource S>
EdgeWeightOutcome etest(Vertex u, Vertex v, S& s, const EstimatorConfig& cfg) {
  const detail::LevelTables t(cfg, cfg.J + 1);
  return detail::etest_impl(u, v, s, t, cfg.J + 1);
}

// Edge test over levels 1..cfg.truncation only.
template <EdgeSource S>
EdgeWeightOutcome etest_truncated(Vertex u, Vertex v, S& s, const EstimatorConfig& cfg) {
  if (!cfg.truncation) throw std::invalid_argument("etest_truncated: truncation unset");
  const int top = std::clamp(*cfg.truncation, 0, cfg.J + 1);
  const detail::LevelTables t(cfg, cfg.J + 1);
  return detail::etest_impl(u, v, s, t, top);
}

namespace detail {

template <EdgeSource S>
double sample_estimate_impl(S& s, std::uint64_t t, const LevelTables& tab, int top) {
  if (t == 0) throw std::invalid_argument("sample_estimate: t must be >= 1");
  double sum = 0.0;
  for (std::uint64_t k = 0; k < t; ++k) {
    const StreamedEdge e = s.next();
    sum += etest_impl(e.u, e.v, s, tab, top).weight;
  }
  return static_cast<double>(tab.cfg.m) * sum / static_cast<double>(t);
}

}  // namespace detail

// Draws t edges, returns m * (sum of edge-test weights) / t.
template <EdgeSource S>
double sample_estimate(S& s, std::uint64_t t, const EstimatorConfig& cfg) {
  const detail::LevelTables tab(cfg, cfg.J + 1);
  return detail::sample_estimate_impl(s, t, tab, cfg.J + 1);
}

struct IidResult {
  double estimate = 0.0;
  bool completed = false;  // false: no batch finished within the budget
  int batches = 0;
  std::uint64_t last_t = 0;
  std::uint64_t samples_used = 0;
};

namespace detail {

template <EdgeSource S>
IidResult doubling(S& s, const EstimatorConfig& cfg, std::uint64_t budget, int top) {
  const LevelTables tab(cfg, cfg.J + 1);
  BudgetedStream<S> b(s, budget);
  IidResult r;
  std::uint64_t t = 1;
  try {
    for (;;) {
      const double est = sample_estimate_impl(b, t, tab, top);
      r.estimate = est;
      r.completed = true;
      ++r.batches;
      r.last_t = t;
      t *= 2;
    }
  } catch (const BudgetExhausted&) {
  } catch (const StreamExhausted&) {
  }
  r.samples_used = b.consumed();
  return r;
}

}  // namespace detail

// Doubling t = 1, 2, 4, ... until cfg.sample_budget runs out; returns the last
// completed batch estimate.
template <EdgeSource S>
IidResult alg_iid(S& s, const EstimatorConfig& cfg) {
  return detail::doubling(s, cfg, cfg.sample_budget, cfg.J + 1);
}

struct PermutationResult {
  IidResult run;
  std::uint64_t budget = 0;
  int truncation = 0;
  bool cursor_monotone = true;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Single pass over a permutation stream with truncated edge tests and a
// budget of floor(beta * m / ln^2 n) edges.
inline PermutationResult permutation_peeling(EdgeStream& s, EstimatorConfig cfg,
                                             double beta = 4.0) {
  if (s.mode() != StreamMode::kPermutation)
    throw PreconditionError("permutation_peeling needs a permutation stream");
  if (cfg.m < 3 * cfg.n)
    throw PreconditionError("permutation_peeling needs m >= 3n; apply virtual_augment "
                            "or densify the input");
  if (!(beta > 0.0)) throw PreconditionError("beta must be positive");
  if (!cfg.truncation) cfg.truncation = truncation_level(cfg.J, cfg.c, cfg.n);
  const double ln = std::log(static_cast<double>(cfg.n));
  PermutationResult out;
  out.truncation = *cfg.truncation;
  out.budget = static_cast<std::uint64_t>(
      std::floor(beta * static_cast<double>(cfg.m) / (ln * ln)));
  const std::uint64_t left = s.edge_count() - std::min(s.edge_count(), s.consumed());
  out.budget = std::min(out.budget, left);

  // Watches the cursor on every emission.
  struct Watch {
    EdgeStream* s;
    bool* mono;
    std::uint64_t last;
    StreamedEdge next() {
      StreamedEdge e = s->next();
      if (s->consumed() <= last) *mono = false;
      last = s->consumed();
      return e;
    }
    std::uint64_t consumed() const { return s->consumed(); }
    std::uint64_t edge_count() const { return s->edge_count(); }
  } watch{&s, &out.cursor_monotone, s.consumed()};
  out.run = detail::doubling(watch, cfg, out.budget, out.truncation);
  return out;
}

}  // namespace mmest
