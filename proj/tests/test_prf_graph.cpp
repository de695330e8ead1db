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


#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "mmest/graph.hpp"
#include "mmest/prf.hpp"

using namespace mmest;

TEST_CASE("prf is a deterministic function of all arguments") {
  const auto a = prf(1, Domain::kStream, 2, 3, 4, 5);
  CHECK(a == prf(1, Domain::kStream, 2, 3, 4, 5));
  std::set<std::uint64_t> seen{a};
  seen.insert(prf(2, Domain::kStream, 2, 3, 4, 5));
  seen.insert(prf(1, Domain::kVertex, 2, 3, 4, 5));
  seen.insert(prf(1, Domain::kStream, 3, 3, 4, 5));
  seen.insert(prf(1, Domain::kStream, 2, 4, 4, 5));
  seen.insert(prf(1, Domain::kStream, 2, 3, 5, 5));
  seen.insert(prf(1, Domain::kStream, 2, 3, 4, 6));
  CHECK(seen.size() == 7);
  CHECK(derive_seed(9, 1) != derive_seed(9, 2));
  CHECK(derive_seed(9, 1, 0) != derive_seed(9, 1, 1));
}

TEST_CASE("PrfStream below is uniform and in range") {
  PrfStream r(42, Domain::kSampler);
  std::vector<int> hist(7, 0);
  const int N = 70000;
  for (int i = 0; i < N; ++i) {
    const auto x = r.below(7);
    REQUIRE(x < 7);
    ++hist[x];
  }
  // chi-square, 6 dof, 0.001 critical value 22.46
  double chi = 0;
  for (int h : hist) chi += (h - N / 7.0) * (h - N / 7.0) / (N / 7.0);
  CHECK(chi < 22.46);
  CHECK_THROWS_AS(r.below(0), std::invalid_argument);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("binomial sampler matches mean and variance") {
  PrfStream r(5, Domain::kSampler);
  for (auto [n, p] : std::vector<std::pair<std::uint64_t, double>>{{10, 0.3}, {100000, 0.002}, {50, 0.9}}) {
    const int T = 20000;
    double s = 0, s2 = 0;
    for (int i = 0; i < T; ++i) {
      const double x = double(sample_binomial(n, p, r));
      REQUIRE(x <= double(n));
      s += x;
      s2 += x * x;
    }
    const double mean = s / T, var = s2 / T - mean * mean;
    const double mu = double(n) * p, v = mu * (1 - p);
    CHECK(std::abs(mean - mu) < 5 * std::sqrt(v / T));
    CHECK(var == Catch::Approx(v).epsilon(0.05));
  }
  CHECK(sample_binomial(7, 0.0, r) == 0);
  CHECK(sample_binomial(7, 1.0, r) == 7);
}

TEST_CASE("load_graph examples") {
  const Graph k3 = parse_graph("3 3\n0 1\n1 2\n0 2\n");
  CHECK(k3.n() == 3);
  CHECK(k3.m() == 3);
  CHECK(k3.max_degree() == 2);
  const Graph e = parse_graph("# comment\n2 1\n  # another\n0 1\n");
  CHECK(e.m() == 1);
  CHECK(e.max_degree() == 1);
  CHECK_THROWS_AS(parse_graph("2 1\n0 0\n"), GraphError);
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 0\n"), GraphError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 2\n"), GraphError);
  CHECK_THROWS(parse_graph("2 1\n0 x\n"));
  CHECK_THROWS(parse_graph("3 2\n0 1\n"));
}

TEST_CASE("save and load round trip keeps edge ids") {
  const Graph g = random_gnm(40, 120, 3);
  std::ostringstream out;
  write_graph(out, g);
  const Graph h = parse_graph(out.str());
  REQUIRE(h.m() == g.m());
  for (std::size_t i = 0; i < g.m(); ++i) {
    CHECK(h.edge(EdgeId(i)).u == g.edge(EdgeId(i)).u);
    CHECK(h.edge(EdgeId(i)).v == g.edge(EdgeId(i)).v);
  }
}

TEST_CASE("adjacency index agrees with the edge list") {
  const Graph g = random_gnm(100, 400, 8);
  std::size_t sum = 0;
  std::map<std::pair<Vertex, Vertex>, int> count;
  for (std::size_t v = 0; v < g.n(); ++v) {
    sum += g.degree(Vertex(v));
    for (EdgeId e : g.incident(Vertex(v))) {
      const Edge& x = g.edge(e);
      REQUIRE((x.u == v || x.v == v));
      ++count[{std::min(x.u, x.v), std::max(x.u, x.v)}];
    }
  }
  CHECK(sum == 2 * g.m());
  for (auto& [k, c] : count) CHECK(c == 2);
  CHECK(g.has_edge(g.edge(0).v, g.edge(0).u));
  Graph h = g;
  CHECK_THROWS_AS(h.declare_degree_bound(g.max_degree() - 1), GraphError);
  h.declare_degree_bound(g.n());
  CHECK(h.degree_bound() == g.n());
}

TEST_CASE("generators have the documented shapes") {
  CHECK(star_graph(5).m() == 5);
  CHECK(star_graph(5).max_degree() == 5);
  CHECK(complete_graph(6).m() == 15);
  CHECK(path_graph(10).m() == 9);
  CHECK(cycle_graph(10).m() == 10);
  CHECK(matching_graph(4).n() == 8);
  CHECK(grid_graph(3, 4).m() == 3 * 3 + 2 * 4);
  CHECK(circulant_graph(20, 3).max_degree() == 6);
  const Graph u = copies(complete_graph(4), 5);
  CHECK(u.n() == 20);
  CHECK(u.m() == 30);
  const Graph b = random_bipartite(10, 12, 50, 1);
  CHECK(b.m() == 50);
  for (const Edge& e : b.edges()) CHECK(((e.u < 10) != (e.v < 10)));
  CHECK(random_gnm(30, 100, 4).edges() == random_gnm(30, 100, 4).edges());
}

TEST_CASE("virtual_augment examples") {
  const Graph k4 = complete_graph(4);
  CHECK(virtual_augment(k4).m() == 6);
  CHECK(virtual_augment(k4).n() == 4);
  const Graph two = Graph(4, {{0, 1}, {2, 3}});
  const Graph a = virtual_augment(two);
  CHECK(a.n() == 5);
  CHECK(a.m() == 6);
  const Graph e3 = virtual_augment(empty_graph(3));
  CHECK(e3.n() == 4);
  CHECK(e3.m() == 3);
}

TEST_CASE("validators") {
  const Graph p = path_graph(4);  // 0-1-2-3
  const std::vector<EdgeId> ok{0, 2}, bad{0, 1};
  CHECK(is_matching(p, ok));
  CHECK_FALSE(is_matching(p, bad));
  CHECK(is_vertex_cover(p, VertexCover{{1, 2}}));
  CHECK_FALSE(is_vertex_cover(p, VertexCover{{1}}));
  CHECK(is_fractional_matching(p, FractionalMatching{{0.5, 0.5, 0.5}}));
  CHECK_FALSE(is_fractional_matching(p, FractionalMatching{{0.6, 0.5, 0.5}}));
  CHECK_FALSE(is_fractional_matching(p, FractionalMatching{{-0.1, 0.0, 0.0}}));
}
