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


#include <algorithm>
#include <cmath>

#include "catch_amalgamated.hpp"
#include "mmest/construction.hpp"
#include "mmest/kdegree.hpp"
#include "mmest/matching.hpp"

using namespace mmest;

namespace {

// Level-k degree as a sorted nested string, straight from the definition.
std::string unfold(const Graph& g, Vertex v, int k) {
  if (k == 1) return std::to_string(g.degree(v));
  std::vector<std::string> kids;
  for (EdgeId e : g.incident(v)) kids.push_back(unfold(g, g.other(e, v), k - 1));
  std::sort(kids.begin(), kids.end());
  std::string s = "{";
  for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i];
  return s + "}";
}

struct Trace {
  std::uint64_t Nh, Nl, dh, dl;
};

// Level 1 read off the base definition; later levels from padding + copying.
std::vector<Trace> recur(std::uint64_t c, int k) {
  std::vector<Trace> t{{c + 1, c * (c + 1), c, 1}};
  for (int j = 2; j <= k; ++j) {
    const Trace p = t.back();
    // Padding lifts every low vertex to d_h and adds d_h - d_l specials of
    // degree N_l; then c copies. Specials become the new high class.
    t.push_back({c * (p.dh - p.dl), c * (p.Nh + p.Nl), p.Nl, p.dh});
  }
  return t;
}

}  // namespace

TEST_CASE("base pair examples") {
  auto [G, H] = build_base_pair(2);
  CHECK(G.n() == 9);
  CHECK(G.m() == 6);
  CHECK(H.n() == 9);
  CHECK(H.m() == 6);
  CHECK(exact_mm(G) == 4);
  CHECK(exact_mm(H) == 3);
  CHECK(brute_force_mm(G) == 4);
  CHECK(brute_force_mm(H) == 3);
  for (std::size_t c = 2; c <= 9; ++c) {
    auto [g, h] = build_base_pair(c);
    CHECK(g.m() == h.m());
    CHECK(g.m() == (c + 1) * c);
    CHECK(g.n() == (c + 1) + (c + 1) * c);
    CHECK(h.n() == (c + 1) * (c + 1));
  }
  CHECK_THROWS_AS(build_base_pair(1), std::invalid_argument);
}

TEST_CASE("degree_pad examples") {
  auto [G, H] = build_base_pair(2);
  const auto p = degree_pad(G);
  CHECK(p.specials.size() == 1);
  CHECK(p.graph.degree(p.specials[0]) == 6);
  CHECK_THROWS_AS(degree_pad(cycle_graph(5)), std::invalid_argument);
  CHECK_THROWS_AS(degree_pad(disjoint_union({path_graph(3), star_graph(3)})), std::invalid_argument);
  auto [g3, h3] = build_base_pair(3);
  const auto hist3 = degree_histogram(g3);
  const auto q = degree_pad(g3);
  const auto hist = degree_histogram(q.graph);
  // d_h = 3, d_l = 1, N_h = 4, N_l = 12: old vertices all degree 3, two specials of degree 12
  REQUIRE(hist.size() == 2);
  CHECK(hist.at(3) == g3.n());
  CHECK(hist.at(12) == 2);
  CHECK(hist3.at(3) == 4);
}

TEST_CASE("build_pair structure, witnesses and bijection on the test grid") {
  for (auto [c, k] : std::vector<std::pair<std::size_t, int>>{{4, 1}, {4, 2}, {6, 1}, {6, 2}, {8, 1}, {8, 2}}) {
    const PairBuild b = build_pair(c, k);
    const auto want = recur(c, k);
    REQUIRE(b.trace_g.size() == std::size_t(k));
    for (int j = 0; j < k; ++j) {
      for (const auto& tr : {b.trace_g[j], b.trace_h[j]}) {
        CHECK(tr.N_h == want[j].Nh);
        CHECK(tr.N_l == want[j].Nl);
        CHECK(tr.d_h == want[j].dh);
        CHECK(tr.d_l == want[j].dl);
        const double cj = std::pow(double(c), j + 1), cj1 = std::pow(double(c), j);
        const int lvl = j + 1;
        CHECK(double(tr.N_h) <= cj + 2 * lvl * cj1);
        CHECK(double(tr.N_l) <= cj * c + 2 * lvl * cj);
        CHECK(double(tr.d_h) <= cj + 2 * lvl * cj1);
        CHECK(tr.d_h > tr.d_l);
      }
      CHECK(b.trace_g[j] == structure_recurrence(c, k)[j]);
    }
    CHECK(b.G.m() == b.H.m());
    CHECK(b.G.n() == b.H.n());
    CHECK(is_matching(b.G, b.witness_matching));
    CHECK(b.witness_matching.size() == (c + 1) * std::size_t(std::pow(double(c), k)) / 2);
    CHECK(is_vertex_cover(b.H, b.witness_cover));
    CHECK(double(b.witness_cover.members.size()) <= 2.0 * k * std::pow(double(c), k));
    LevelDegreeInterner in;
    CHECK(find_degree_bijection(b.G, b.H, k, in).ok);
  }
  const PairBuild b42 = build_pair(4, 2);
  CHECK(b42.witness_matching.size() == 40);
  CHECK(b42.witness_cover.members.size() <= 64);
  CHECK_THROWS_AS(build_pair(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_pair(4, 0), std::invalid_argument);
}

TEST_CASE("k_level_degree examples") {
  LevelDegreeInterner in;
  const Graph p = path_graph(3);  // a-b-c
  const auto f2 = in.all(p, 2);
  CHECK(in.render(in.all(p, 1)[1]) == "2");
  CHECK(in.render(f2[1]) == "{1,1}");
  CHECK(in.render(f2[0]) == "{2}");
  const Graph k3 = complete_graph(3);
  for (int k = 1; k <= 5; ++k) {
    const auto f = in.all(k3, k);
    CHECK(f[0] == f[1]);
    CHECK(f[1] == f[2]);
    CHECK(f[0] == in.all(cycle_graph(4), k)[0]);  // cycles look alike
  }
  CHECK_THROWS_AS(in.all(k3, 0), std::invalid_argument);
}

TEST_CASE("interned forms agree with direct unfolding") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_gnm(14, 20, seed);
    LevelDegreeInterner in;
    for (int k = 1; k <= 3; ++k) {
      const auto f = in.all(g, k);
      for (Vertex a = 0; a < g.n(); ++a)
        for (Vertex b = 0; b < g.n(); ++b)
          REQUIRE((f[a] == f[b]) == (unfold(g, a, k) == unfold(g, b, k)));
    }
  }
}

TEST_CASE("find_degree_bijection examples") {
  LevelDegreeInterner in;
  const auto fail = find_degree_bijection(complete_graph(3), path_graph(3), 1, in);
  CHECK_FALSE(fail.ok);
  CHECK_FALSE(fail.mismatch.empty());
  auto [G, H] = build_base_pair(2);
  const auto r = find_degree_bijection(G, H, 1, in);
  REQUIRE(r.ok);
  for (Vertex v = 0; v < 3; ++v) CHECK(r.phi[v] % 3 == 0);  // clique -> star centers
  for (Vertex v = 3; v < 9; ++v) CHECK(r.phi[v] % 3 != 0);  // edge ends -> petals
  std::vector<Vertex> img = r.phi;
  std::sort(img.begin(), img.end());
  CHECK(std::adjacent_find(img.begin(), img.end()) == img.end());
  for (Vertex v = 0; v < G.n(); ++v) CHECK(G.degree(v) == H.degree(r.phi[v]));
  CHECK_FALSE(find_degree_bijection(complete_graph(3), complete_graph(4), 1, in).ok);
}
