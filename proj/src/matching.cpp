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


#include "mmest/matching.hpp"

namespace mmest {

namespace {

// Augmenting-path search with blossom contraction. Per-search state is reset
// only on the vertices a search touched, so one sweep over the free vertices
// costs O(sum of explored component sizes) plus contraction work.
class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g), n_(static_cast<int>(g.n())), mate_(g.n(), -1), parent_(g.n(), -1),
        base_(g.n()), used_(g.n(), 0), in_blossom_(g.n(), 0), mark_(g.n(), 0) {
    for (int v = 0; v < n_; ++v) base_[v] = v;
  }

  std::vector<int> solve() {
    // Greedy start.
    for (const Edge& e : g_.edges()) {
      if (mate_[e.u] == -1 && mate_[e.v] == -1) {
        mate_[e.u] = static_cast<int>(e.v);
        mate_[e.v] = static_cast<int>(e.u);
      }
    }
    // A vertex with no augmenting path now never gets one later, so a single
    // pass over the free vertices suffices.
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] != -1 || g_.degree(Vertex(v)) == 0) continue;
      int to = find_path(v);
      while (to != -1) {
        const int pv = parent_[to];
        const int ppv = mate_[pv];
        mate_[to] = pv;
        mate_[pv] = to;
        to = ppv;
      }
    }
    return mate_;
  }

 private:
  void touch(int v) {
    if (!touched_flag(v)) {
      touched_.push_back(v);
      seen_[v] = epoch_;
    }
  }
  bool touched_flag(int v) const { return seen_[v] == epoch_; }

  int lca(int a, int b) {
    ++stamp_;
    for (;;) {
      a = base_[a];
      mark_[a] = stamp_;
      if (mate_[a] == -1) break;
      a = parent_[mate_[a]];
    }
    for (;;) {
      b = base_[b];
      if (mark_[b] == stamp_) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[mate_[v]]] = 1;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  int find_path(int root) {
    for (int t : touched_) {
      used_[t] = 0;
      parent_[t] = -1;
      base_[t] = t;
    }
    touched_.clear();
    if (seen_.empty()) seen_.assign(g_.n(), 0);
    ++epoch_;
    queue_.clear();
    std::size_t head = 0;
    used_[root] = 1;
    touch(root);
    queue_.push_back(root);
    while (head < queue_.size()) {
      const int v = queue_[head++];
      for (EdgeId e : g_.incident(Vertex(v))) {
        const int to = static_cast<int>(g_.other(e, Vertex(v)));
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != -1 && parent_[mate_[to]] != -1)) {
          const int cur = lca(v, to);
          for (int t : touched_) in_blossom_[t] = 0;
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t k = 0; k < touched_.size(); ++k) {
            const int t = touched_[k];
            if (in_blossom_[base_[t]]) {
              base_[t] = cur;
              if (!used_[t]) {
                used_[t] = 1;
                queue_.push_back(t);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          touch(to);
          if (mate_[to] == -1) return to;
          const int w = mate_[to];
          touch(w);
          used_[w] = 1;
          queue_.push_back(w);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  int n_;
  std::vector<int> mate_, parent_, base_;
  std::vector<char> used_, in_blossom_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t stamp_ = 0;
  std::vector<std::uint64_t> seen_;
  std::uint64_t epoch_ = 0;
  std::vector<int> touched_;
  std::vector<int> queue_;
};

}  // namespace

// mate[v] = partner or -1, for one maximum matching.
std::vector<int> maximum_matching(const Graph& g) {
  if (g.m() > kExactMmEdgeLimit) throw SolverLimit("graph too large for exact matching");
  return Blossom(g).solve();
}

std::size_t exact_mm(const Graph& g) {
  std::size_t k = 0;
  for (int x : maximum_matching(g)) k += (x != -1);
  return k / 2;
}

// Subset DP over vertex masks; independent of the blossom code.
std::size_t brute_force_mm(const Graph& g) {
  if (g.n() > 20) throw SolverLimit("brute_force_mm: n > 20");
  const std::size_t n = g.n();
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  std::vector<std::uint8_t> f(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int v = __builtin_ctz(mask);
    const std::uint32_t rest = mask & (mask - 1);
    std::uint8_t best = f[rest];
    std::uint32_t nb = adj[v] & rest;
    while (nb) {
      const int w = __builtin_ctz(nb);
      nb &= nb - 1;
      const std::uint8_t cand = static_cast<std::uint8_t>(1 + f[rest & ~(1u << w)]);
      if (cand > best) best = cand;
    }
    f[mask] = best;
  }
  return f[(std::size_t{1} << n) - 1];
}

// Scans edges in `order` and keeps each edge whose endpoints are both free.
std::vector<EdgeId> greedy_maximal_matching(const Graph& g,
                                                   std::span<const EdgeId> order) {
  if (order.size() != g.m()) throw std::invalid_argument("order is not a permutation of E");
  std::vector<char> seen(g.m(), 0), used(g.n(), 0);
  std::vector<EdgeId> out;
  for (EdgeId e : order) {
    if (e >= g.m() || seen[e]) throw std::invalid_argument("order is not a permutation of E");
    seen[e] = 1;
    const Edge& x = g.edge(e);
    if (!used[x.u] && !used[x.v]) {
      used[x.u] = used[x.v] = 1;
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace mmest
