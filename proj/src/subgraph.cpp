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


#include "mmest/subgraph.hpp"

namespace mmest {

namespace detail {

std::string component_code(std::size_t k, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> deg(k, 0);
  for (auto [a, b] : edges) ++deg[a], ++deg[b];
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
  });
  // Permute within runs of equal degree only.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < k;) {
    std::size_t j = i;
    while (j < k && deg[order[j]] == deg[order[i]]) ++j;
    runs.push_back({i, j});
    i = j;
  }
  std::string best;
  std::vector<int> pos(k);
  auto evaluate = [&]() {
    for (std::size_t i = 0; i < k; ++i) pos[order[i]] = int(i);
    std::vector<std::pair<int, int>> ren;
    for (auto [a, b] : edges) {
      int x = pos[a], y = pos[b];
      if (x > y) std::swap(x, y);
      ren.push_back({x, y});
    }
    std::sort(ren.begin(), ren.end());
    std::string s;
    s.push_back(char('A' + k));
    for (auto [x, y] : ren) {
      s.push_back(char('a' + x));
      s.push_back(char('a' + y));
    }
    if (best.empty() || s < best) best = s;
  };
  // Odometer over the permutations of each run.
  for (auto [lo, hi] : runs) std::sort(order.begin() + lo, order.begin() + hi);
  for (;;) {
    evaluate();
    std::size_t r = 0;
    for (; r < runs.size(); ++r) {
      auto [lo, hi] = runs[r];
      if (std::next_permutation(order.begin() + lo, order.begin() + hi)) break;
    }
    if (r == runs.size()) break;
  }
  return best;
}

}  // namespace detail

CanonicalForm canonical_form(const std::vector<Edge>& edges) {
  std::map<Vertex, int> local;
  for (const Edge& e : edges) {
    local.try_emplace(e.u, int(local.size()));
    local.try_emplace(e.v, int(local.size()));
  }
  const int k = int(local.size());
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<int, int>> le;
  for (const Edge& e : edges) {
    const int a = local[e.u], b = local[e.v];
    le.push_back({a, b});
    parent[find(a)] = find(b);
  }
  std::map<int, std::vector<int>> comp_vertices;
  for (int v = 0; v < k; ++v) comp_vertices[find(v)].push_back(v);
  std::vector<std::string> codes;
  for (auto& [root, verts] : comp_vertices) {
    std::map<int, int> idx;
    for (int v : verts) idx.try_emplace(v, int(idx.size()));
    std::vector<std::pair<int, int>> ce;
    for (auto [a, b] : le)
      if (find(a) == root) ce.push_back({idx[a], idx[b]});
    codes.push_back(detail::component_code(verts.size(), ce));
  }
  std::sort(codes.begin(), codes.end());
  std::string out;
  for (auto& c : codes) {
    if (!out.empty()) out.push_back('|');
    out += c;
  }
  return out;
}

CanonicalForm canonical_form(const Graph& g) { return canonical_form(g.edges()); }

Graph compact_graph(const std::vector<Edge>& edges) {
  std::map<Vertex, Vertex> local;
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    local.try_emplace(e.u, Vertex(local.size()));
    local.try_emplace(e.v, Vertex(local.size()));
    out.push_back({local[e.u], local[e.v]});
  }
  return Graph(local.size(), std::move(out));
}

std::vector<Graph> pattern_catalog(std::size_t k) {
  if (k > kMaxPatternEdges) throw std::invalid_argument("pattern catalog limited to 5 edges");
  std::vector<Graph> out;
  for (std::size_t j = 1; j <= k; ++j) {
    const Graph K = complete_graph(2 * j);
    std::map<CanonicalForm, std::vector<Edge>> seen;
    std::vector<std::size_t> idx(j);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t m = K.m();
    for (;;) {
      std::vector<Edge> es;
      for (auto i : idx) es.push_back(K.edge(EdgeId(i)));
      seen.try_emplace(canonical_form(es), es);
      std::size_t p = j;
      while (p > 0 && idx[p - 1] == m - j + p - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < j; ++q) idx[q] = idx[q - 1] + 1;
    }
    for (auto& [form, es] : seen) out.push_back(compact_graph(es));
  }
  return out;
}

void check_enumeration_size(std::size_t m, std::size_t k, double limit) {
  double total = 0, c = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    c = c * double(m - j + 1) / double(j);
    total += c;
  }
  if (total > limit) throw std::invalid_argument("subgraph enumeration too large");
}

std::map<CanonicalForm, std::uint64_t> subset_census(const Graph& g, std::size_t k) {
  if (k > kMaxPatternEdges) throw std::invalid_argument("pattern too large (max 5 edges)");
  check_enumeration_size(g.m(), k);
  std::map<CanonicalForm, std::uint64_t> tally;
  const std::size_t m = g.m();
  for (std::size_t j = 1; j <= k && j <= m; ++j) {
    std::vector<std::size_t> idx(j);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Edge> es(j);
    for (;;) {
      for (std::size_t i = 0; i < j; ++i) es[i] = g.edge(EdgeId(idx[i]));
      ++tally[canonical_form(es)];
      std::size_t p = j;
      while (p > 0 && idx[p - 1] == m - j + p - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < j; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return tally;
}

std::uint64_t subgraph_count(const Graph& g, const Graph& pattern) {
  if (pattern.m() > kMaxPatternEdges) throw std::invalid_argument("pattern too large (max 5 edges)");
  if (pattern.m() == 0) return 1;
  const auto want = canonical_form(pattern);
  const std::size_t j = pattern.m();
  if (j > g.m()) return 0;
  check_enumeration_size(g.m(), j);
  std::uint64_t count = 0;
  std::vector<std::size_t> idx(j);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Edge> es(j);
  const std::size_t m = g.m();
  for (;;) {
    for (std::size_t i = 0; i < j; ++i) es[i] = g.edge(EdgeId(idx[i]));
    count += canonical_form(es) == want;
    std::size_t p = j;
    while (p > 0 && idx[p - 1] == m - j + p - 1) --p;
    if (p == 0) break;
    ++idx[p - 1];
    for (std::size_t q = p; q < j; ++q) idx[q] = idx[q - 1] + 1;
  }
  return count;
}

IndistinguishabilityReport verify_indistinguishable(const Graph& G, const Graph& H,
                                                    std::size_t k) {
  IndistinguishabilityReport rep;
  rep.k = k;
  const auto tg = subset_census(G, k);
  const auto th = subset_census(H, k);
  for (const Graph& p : pattern_catalog(k)) {
    PatternRow row;
    row.form = canonical_form(p);
    row.edges = p.m();
    if (auto it = tg.find(row.form); it != tg.end()) row.count_g = it->second;
    if (auto it = th.find(row.form); it != th.end()) row.count_h = it->second;
    if (!row.equal()) {
      rep.all_equal = false;
      if (!rep.first_difference) rep.first_difference = row;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mmest
