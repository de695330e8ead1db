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

// Randomized-greedy membership queries (recursive "is e in the greedy
// matching for ranking r") on explicit graphs and on lazily generated
// infinite trees, with exploration statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mmest/graph.hpp"
#include "mmest/prf.hpp"

namespace mmest {

struct ExplorationStats {
  std::uint64_t T = 0;  // explored edges, the queried edge included
  int D = 0;            // deepest level reached, root at 0
  bool truncated = false;
};

// ---- explicit graphs -----------------------------------------------------

namespace detail {

struct ExplicitYyi {
  const Graph& g;
  std::span<const double> rank;
  bool memo;
  bool prune;
  std::vector<signed char> result;  // -1 unknown
  std::vector<char> visited;
  ExplorationStats st;

  bool before(EdgeId a, EdgeId b) const {
    return rank[a] != rank[b] ? rank[a] < rank[b] : a < b;
  }

  // `from` is the vertex shared with the caller's edge, or UINT32_MAX at the root.
  bool run(EdgeId e, Vertex from, int depth) {
    if (memo && result[e] >= 0) return result[e] != 0;
    if (!visited[e] || !memo) ++st.T;
    visited[e] = 1;
    st.D = std::max(st.D, depth);
    const Edge& x = g.edge(e);
    std::vector<std::pair<EdgeId, Vertex>> pred;  // (edge, shared vertex)
    for (Vertex end : {x.u, x.v}) {
      if (prune && end == from) continue;
      for (EdgeId f : g.incident(end))
        if (f != e && before(f, e)) pred.push_back({f, end});
    }
    std::sort(pred.begin(), pred.end(),
              [&](const auto& a, const auto& b) { return before(a.first, b.first); });
    bool in = true;
    for (auto [f, shared] : pred) {
      if (run(f, shared, depth + 1)) {
        in = false;
        break;
      }
    }
    if (memo) result[e] = in ? 1 : 0;
    return in;
  }
};

}  // namespace detail

// Whether e belongs to the greedy matching for ranking `rank` (smaller rank
// first; ties by id). memo: each edge's answer is computed once and T counts
// distinct edges; otherwise T counts calls. prune: a recursive call only
// looks at edges on the far side of the vertex it was reached through.
inline std::pair<bool, ExplorationStats> yyi_matching(const Graph& g, EdgeId e,
                                                      std::span<const double> rank,
                                                      bool memo = true, bool prune = false) {
  if (rank.size() != g.m()) throw std::invalid_argument("one rank per edge required");
  detail::ExplicitYyi run{g, rank, memo, prune, std::vector<signed char>(g.m(), -1),
                          std::vector<char>(g.m(), 0), {}};
  const bool in = run.run(e, UINT32_MAX, 0);
  return {in, run.st};
}

// ---- lazy trees ----------------------------------------------------------

enum class TreeKind { kHd, kHde };

struct TreeSpec {
  TreeKind kind = TreeKind::kHd;
  int d = 5;
  double eps = 0.125;
  int lmax = 64;

  // Children of the root edge: d for H^d, round(eps*d) >= 1 for H^{d,eps}.
  int root_children() const {
    if (kind == TreeKind::kHd) return d;
    return std::max(1, static_cast<int>(std::lround(eps * d)));
  }
};

inline int analysis_truncation_depth(int d) {
  return static_cast<int>(std::ceil(7.0 * std::log2(3.0 * d))) + 1;
}

// Edges are nodes identified by creation order; a node's id is its path id.
// Children (and their ranks) are created together the first time a node is
// expanded, so every rank is drawn exactly once.
class LazyTree {
 public:
  LazyTree(const TreeSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {
    if (spec.d < 1) throw std::invalid_argument("tree degree must be >= 1");
    if (spec.lmax < 0) throw std::invalid_argument("lmax must be >= 0");
    nodes_.push_back({draw(), UINT32_MAX, UINT32_MAX, 0, 0});
  }

  static constexpr std::uint32_t kRoot = 0;

  double rank(std::uint32_t x) const { return nodes_[x].rank; }
  int depth(std::uint32_t x) const { return nodes_[x].depth; }
  std::uint32_t parent(std::uint32_t x) const { return nodes_[x].parent; }
  std::size_t size() const { return nodes_.size(); }
  std::uint64_t rank_draws() const { return draws_; }

  // Child ids of x (empty at depth lmax).
  std::span<const std::uint32_t> children(std::uint32_t x) {
    if (nodes_[x].first_child == UINT32_MAX) expand(x);
    const auto& n = nodes_[x];
    return {kids_.data() + n.first_child, n.child_count};
  }

  bool before(std::uint32_t a, std::uint32_t b) const {
    return rank(a) != rank(b) ? rank(a) < rank(b) : a < b;
  }

 private:
  struct Node {
    double rank;
    std::uint32_t parent;
    std::uint32_t first_child;
    std::uint32_t child_count;
    int depth;
  };

  double draw() {
    ++draws_;
    return static_cast<double>(rng_() >> 11) * 0x1p-53;
  }

  void expand(std::uint32_t x) {
    const int dep = nodes_[x].depth;
    const int k = dep >= spec_.lmax ? 0 : (x == kRoot ? spec_.root_children() : spec_.d);
    const auto first = static_cast<std::uint32_t>(kids_.size());
    for (int i = 0; i < k; ++i) {
      kids_.push_back(static_cast<std::uint32_t>(nodes_.size()));
      nodes_.push_back({draw(), x, UINT32_MAX, 0, dep + 1});
    }
    nodes_[x].first_child = first;
    nodes_[x].child_count = static_cast<std::uint32_t>(k);
  }

  TreeSpec spec_;
  std::mt19937_64 rng_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> kids_;
  std::uint64_t draws_ = 0;
};

namespace detail {

struct LazyYyi {
  LazyTree& t;
  int lmax;
  bool prune;
  std::unordered_map<std::uint32_t, bool> result;
  ExplorationStats st;

  void visit(std::uint32_t x) {
    ++st.T;
    st.D = std::max(st.D, t.depth(x));
    if (t.depth(x) >= lmax) st.truncated = true;
  }

  // Pruned: only children with smaller rank, in increasing rank.
  bool pruned(std::uint32_t x) {
    visit(x);
    std::vector<std::uint32_t> pred;
    for (auto c : t.children(x))
      if (t.before(c, x)) pred.push_back(c);
    std::sort(pred.begin(), pred.end(), [&](auto a, auto b) { return t.before(a, b); });
    for (auto c : pred)
      if (pruned(c)) return false;
    return true;
  }

  // Full neighborhood (parent, siblings, children) with memoization.
  bool full(std::uint32_t x) {
    if (auto it = result.find(x); it != result.end()) return it->second;
    visit(x);
    std::vector<std::uint32_t> pred;
    const auto p = t.parent(x);
    if (p != UINT32_MAX) {
      if (t.before(p, x)) pred.push_back(p);
      for (auto s : t.children(p))
        if (s != x && t.before(s, x)) pred.push_back(s);
    }
    for (auto c : t.children(x))
      if (t.before(c, x)) pred.push_back(c);
    std::sort(pred.begin(), pred.end(), [&](auto a, auto b) { return t.before(a, b); });
    bool in = true;
    for (auto f : pred)
      if (full(f)) {
        in = false;
        break;
      }
    result[x] = in;
    return in;
  }
};

}  // namespace detail

// Query on a lazy tree node (usually the root).
inline std::pair<bool, ExplorationStats> yyi_matching(LazyTree& t, std::uint32_t x, int lmax,
                                                      bool prune = true) {
  detail::LazyYyi run{t, lmax, prune, {}, {}};
  const bool in = prune ? run.pruned(x) : run.full(x);
  return {in, run.st};
}

// One root query per trial, each on a fresh tree seeded from (seed, trial).
inline ExplorationStats simulate_one(const TreeSpec& spec, std::uint64_t seed,
                                     std::uint64_t trial, bool prune = true) {
  LazyTree t(spec, derive_seed(seed, trial, 0x9e3779b9ULL));
  return yyi_matching(t, LazyTree::kRoot, spec.lmax, prune).second;
}

// ---- closed forms --------------------------------------------------------

inline double closed_form_x(double lambda, double d) { return 1.0 + (d - 1.0) * lambda; }

// Expected exploration size of the H^d root given its rank.
inline double closed_form_t(double lambda, double d) {
  return std::pow(closed_form_x(lambda, d), d / (d - 1.0));
}

// Probability that the H^d root is matched given its rank.
inline double closed_form_p(double lambda, double d) {
  return std::pow(closed_form_x(lambda, d), d / (1.0 - d));
}

// Lower bound on the H^{d,eps} root exploration size given its rank.
inline double closed_form_troot_hde(double lambda, double d, double eps) {
  return eps * std::pow(closed_form_x(lambda, d), 2.0 - eps) / 2.0;
}

// Integral of closed_form_t over [0, 1]: (d^{(2d-1)/(d-1)} - 1) / (2d - 1).
inline double expected_root_t(double d) {
  return (std::pow(d, (2.0 * d - 1.0) / (d - 1.0)) - 1.0) / (2.0 * d - 1.0);
}

// (1/8) eps (d/2)^{2-eps}.
inline double hde_mean_lower_bound(double d, double eps) {
  return eps * std::pow(d / 2.0, 2.0 - eps) / 8.0;
}

inline double depth_tail_bound(double d, int l) { return std::pow(2.0, 1 - l) * d * d; }
inline double second_moment_bound_hd(double d) { return 10.0 * std::pow(d, 5); }
inline double second_moment_bound_hde(double d, double eps) { return 11.0 * eps * std::pow(d, 6); }

}  // namespace mmest
