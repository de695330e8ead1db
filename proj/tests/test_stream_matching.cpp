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
#include <map>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "catch_amalgamated.hpp"
#include "mmest/construction.hpp"
#include "mmest/graph.hpp"
#include "mmest/matching.hpp"
#include "mmest/stream.hpp"

using namespace mmest;

namespace {

std::size_t boost_mm(const Graph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(g.n());
  for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
  std::vector<boost::graph_traits<BG>::vertex_descriptor> mate(g.n());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  return boost::matching_size(bg, &mate[0]);
}

}  // namespace

TEST_CASE("IID stream on a single edge returns that edge") {
  const Graph g(2, {{0, 1}});
  EdgeStream s(g, StreamMode::kIid, 1);
  for (int i = 0; i < 10; ++i) {
    const auto e = s.next();
    CHECK(e.id == 0);
  }
  CHECK(s.consumed() == 10);
}

TEST_CASE("permutation stream emits every edge once then errors") {
  const Graph g = complete_graph(3);
  EdgeStream s(g, StreamMode::kPermutation, 9);
  std::set<EdgeId> ids;
  for (int i = 0; i < 3; ++i) ids.insert(s.next().id);
  CHECK(ids.size() == 3);
  CHECK_THROWS_AS(s.next(), StreamExhausted);
}

TEST_CASE("permutation orders are uniform over the 6 orders of K3") {
  const Graph g = complete_graph(3);
  std::map<std::vector<EdgeId>, int> hist;
  const int N = 60000;
  for (int t = 0; t < N; ++t) {
    EdgeStream s(g, StreamMode::kPermutation, std::uint64_t(t));
    std::vector<EdgeId> o;
    for (int i = 0; i < 3; ++i) o.push_back(s.next().id);
    ++hist[o];
  }
  REQUIRE(hist.size() == 6);
  double chi = 0;
  for (auto& [k, c] : hist) chi += (c - N / 6.0) * (c - N / 6.0) / (N / 6.0);
  CHECK(chi < 20.52);  // 5 dof, 0.001
}

TEST_CASE("IID frequencies on K3 and chi-square on a 100-edge graph") {
  const Graph k3 = complete_graph(3);
  EdgeStream s(k3, StreamMode::kIid, 3);
  std::vector<int> f(3, 0);
  for (int i = 0; i < 100000; ++i) ++f[s.next().id];
  for (int x : f) CHECK(std::abs(x / 1e5 - 1.0 / 3) < 0.01);

  const Graph g = random_gnm(40, 100, 2);
  EdgeStream t(g, StreamMode::kIid, 4);
  std::vector<int> h(100, 0);
  for (int i = 0; i < 100000; ++i) ++h[t.next().id];
  double chi = 0;
  for (int x : h) chi += (x - 1000.0) * (x - 1000.0) / 1000.0;
  CHECK(chi < 134.6);  // 99 dof, 0.01
}

TEST_CASE("prefix stream keeps the prefix and permutes the rest") {
  const Graph g = complete_graph(5);
  const std::vector<EdgeId> prefix{3, 7};
  auto s = EdgeStream::with_prefix(g, prefix, 1);
  CHECK(s.consumed() == 2);
  std::set<EdgeId> rest;
  for (std::size_t i = 2; i < g.m(); ++i) rest.insert(s.next().id);
  CHECK(rest.size() == g.m() - 2);
  CHECK(rest.count(3) == 0);
  CHECK(rest.count(7) == 0);
  CHECK_THROWS_AS(EdgeStream::with_prefix(g, {1, 1}, 1), std::invalid_argument);
}

TEST_CASE("scripted and budgeted streams") {
  const Graph g = path_graph(4);
  ScriptedStream s(g, {2, 0}, true);
  CHECK(s.next().id == 2);
  CHECK(s.next().id == 0);
  CHECK(s.next().id == 2);
  ScriptedStream once(g, {1});
  once.next();
  CHECK_THROWS_AS(once.next(), StreamExhausted);
  EdgeStream inner(g, StreamMode::kIid, 1);
  BudgetedStream<EdgeStream> b(inner, 2);
  b.next();
  b.next();
  CHECK_THROWS_AS(b.next(), BudgetExhausted);
  CHECK(b.consumed() == 2);
}

TEST_CASE("exact_mm examples") {
  CHECK(exact_mm(complete_graph(3)) == 1);
  CHECK(exact_mm(matching_graph(5)) == 5);
  const Graph g1 = disjoint_union({complete_graph(3), matching_graph(3)});
  CHECK(exact_mm(g1) == 4);
  CHECK(brute_force_mm(g1) == 4);
  CHECK(exact_mm(build_pair(2, 1).G) == 4);
  CHECK(exact_mm(empty_graph(4)) == 0);
}

TEST_CASE("exact_mm agrees with brute force and with Boost Edmonds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 4 + seed % 15;
    const std::size_t m = std::min<std::size_t>(n * (n - 1) / 2, 2 + seed % 40);
    const Graph g = random_gnm(n, m, seed);
    const auto mm = exact_mm(g);
    REQUIRE(mm == brute_force_mm(g));
    REQUIRE(mm == boost_mm(g));
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_gnm(300, 500 + 50 * seed, seed);
    REQUIRE(exact_mm(g) == boost_mm(g));
  }
  CHECK(exact_mm(cycle_graph(999)) == boost_mm(cycle_graph(999)));
}

TEST_CASE("maximum_matching returns a consistent mate array") {
  const Graph g = random_gnm(60, 150, 5);
  const auto mate = maximum_matching(g);
  std::size_t k = 0;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (mate[v] < 0) continue;
    REQUIRE(mate[std::size_t(mate[v])] == int(v));
    REQUIRE(g.has_edge(Vertex(v), Vertex(mate[v])));
    ++k;
  }
  CHECK(k / 2 == exact_mm(g));
}

TEST_CASE("greedy_maximal_matching examples and properties") {
  const Graph p3 = path_graph(3);  // edges 0:(0,1) 1:(1,2)
  const std::vector<EdgeId> o1{0, 1};
  CHECK(greedy_maximal_matching(p3, o1) == std::vector<EdgeId>{0});
  const Graph p4 = path_graph(4);  // 0:(a,b) 1:(b,c) 2:(c,d)
  const std::vector<EdgeId> o2{1, 0, 2};
  CHECK(greedy_maximal_matching(p4, o2) == std::vector<EdgeId>{1});
  const Graph k3 = complete_graph(3);
  std::vector<EdgeId> o3{0, 1, 2};
  do {
    CHECK(greedy_maximal_matching(k3, o3).size() == 1);
  } while (std::next_permutation(o3.begin(), o3.end()));
  const std::vector<EdgeId> bad{0, 0, 1};
  CHECK_THROWS_AS(greedy_maximal_matching(k3, bad), std::invalid_argument);

  const Graph g = random_gnm(80, 300, 6);
  std::vector<EdgeId> order(g.m());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = EdgeId(i);
  const auto M = greedy_maximal_matching(g, order);
  CHECK(is_matching(g, M));
  CHECK(2 * M.size() >= exact_mm(g));
  std::vector<char> used(g.n(), 0);
  for (EdgeId e : M) used[g.edge(e).u] = used[g.edge(e).v] = 1;
  for (const Edge& e : g.edges()) CHECK((used[e.u] || used[e.v]));  // maximal
  // weak duality against the cover of matched endpoints
  VertexCover c;
  for (std::size_t v = 0; v < g.n(); ++v)
    if (used[v]) c.members.push_back(Vertex(v));
  CHECK(is_vertex_cover(g, c));
  CHECK(M.size() <= c.members.size());
}
