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


#include "mmest/construction.hpp"

namespace mmest {

std::pair<Graph, Graph> build_base_pair(std::size_t c) {
  if (c < 2) throw std::invalid_argument("base pair needs c >= 2");
  std::vector<Graph> gp{complete_graph(c + 1), matching_graph((c + 1) * c / 2)};
  std::vector<Graph> hp(c + 1, star_graph(c));
  return {disjoint_union(gp), disjoint_union(hp)};
}

std::map<std::size_t, std::size_t> degree_histogram(const Graph& g) {
  std::map<std::size_t, std::size_t> h;
  for (std::size_t v = 0; v < g.n(); ++v) ++h[g.degree(Vertex(v))];
  return h;
}

PaddedGraph degree_pad(const Graph& g) {
  const auto hist = degree_histogram(g);
  if (hist.size() != 2) {
    throw std::invalid_argument("degree_pad needs exactly two distinct degrees, got " +
                                std::to_string(hist.size()));
  }
  const std::size_t dl = hist.begin()->first;
  const std::size_t dh = hist.rbegin()->first;
  std::vector<Edge> e = g.edges();
  PaddedGraph out;
  for (std::size_t s = 0; s < dh - dl; ++s) {
    const auto sv = static_cast<Vertex>(g.n() + s);
    out.specials.push_back(sv);
    for (std::size_t v = 0; v < g.n(); ++v)
      if (g.degree(Vertex(v)) == dl) e.push_back({Vertex(v), sv});
  }
  out.graph = Graph(g.n() + (dh - dl), std::move(e));
  return out;
}

StructureCounts structure_of(const Graph& g) {
  const auto hist = degree_histogram(g);
  if (hist.size() != 2) throw std::logic_error("construction lost the two-degree structure");
  StructureCounts s;
  s.d_l = hist.begin()->first;
  s.N_l = hist.begin()->second;
  s.d_h = hist.rbegin()->first;
  s.N_h = hist.rbegin()->second;
  return s;
}

std::vector<StructureCounts> structure_recurrence(std::uint64_t c, int k) {
  std::vector<StructureCounts> out;
  StructureCounts s{c + 1, (c + 1) * c, c, 1};
  out.push_back(s);
  for (int j = 2; j <= k; ++j) {
    StructureCounts t;
    t.N_h = c * (s.d_h - s.d_l);
    t.N_l = c * (s.N_h + s.N_l);
    t.d_h = s.N_l;
    t.d_l = s.d_h;
    out.push_back(t);
    s = t;
  }
  return out;
}

PairBuild build_pair(std::size_t c, int k) {
  if (k < 1) throw std::invalid_argument("build_pair needs k >= 1");
  if (c < 2 * static_cast<std::size_t>(k))
    throw std::invalid_argument("build_pair needs c >= 2k");
  PairBuild b;
  b.c = c;
  b.k = k;
  auto [G, H] = build_base_pair(c);
  // Isolated edges of G1 follow the clique edges.
  std::vector<EdgeId> wm;
  for (std::size_t i = 0; i < (c + 1) * c / 2; ++i) wm.push_back(EdgeId(c * (c + 1) / 2 + i));
  std::vector<Vertex> wc;
  for (std::size_t i = 0; i <= c; ++i) wc.push_back(Vertex(i * (c + 1)));
  b.trace_g.push_back(structure_of(G));
  b.trace_h.push_back(structure_of(H));
  for (int j = 2; j <= k; ++j) {
    PaddedGraph pg = degree_pad(G);
    PaddedGraph ph = degree_pad(H);
    for (Vertex s : ph.specials) wc.push_back(s);
    const std::size_t mg = pg.graph.m(), nh = ph.graph.n();
    std::vector<EdgeId> wm2;
    std::vector<Vertex> wc2;
    for (std::size_t r = 0; r < c; ++r) {
      for (EdgeId e : wm) wm2.push_back(EdgeId(e + r * mg));
      for (Vertex v : wc) wc2.push_back(Vertex(v + r * nh));
    }
    wm = std::move(wm2);
    wc = std::move(wc2);
    G = copies(pg.graph, c);
    H = copies(ph.graph, c);
    b.trace_g.push_back(structure_of(G));
    b.trace_h.push_back(structure_of(H));
  }
  b.G = std::move(G);
  b.H = std::move(H);
  b.witness_matching = std::move(wm);
  std::sort(wc.begin(), wc.end());
  b.witness_cover.members = std::move(wc);
  return b;
}

}  // namespace mmest
