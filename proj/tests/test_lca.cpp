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

#include "catch_amalgamated.hpp"
#include "mmest/lca.hpp"

using namespace mmest;

TEST_CASE("lca_vtest examples") {
  const Graph g = disjoint_union({star_graph(6), empty_graph(1)});
  const LcaOracle orc(g, make_oracle_config(g, 5));
  QueryLedger led;
  CHECK(orc.lca_vtest(1, 7, led));
  CHECK(led.probes == 0);
  // d = 6, m = 6: level 1 draws Binomial(1, 6/6) = 1 neighbor, which passes
  // level 0 and adds 1 >= delta.
  QueryLedger l2;
  CHECK_FALSE(orc.lca_vtest(1, 0, l2));
  CHECK(l2.probes == 1);
  for (Vertex v = 0; v < 7; ++v)
    for (int level = 1; level <= orc.config().J + 1; ++level) {
      QueryLedger a, b;
      CHECK(orc.lca_vtest(level, v, a) == orc.lca_vtest(level, v, b));
      CHECK(a.probes == b.probes);
    }
  CHECK_THROWS_AS(orc.lca_vtest(orc.config().J + 2, 0, led), std::invalid_argument);
}

TEST_CASE("lca_etest: bounds, consistency, fuzzed probe ledger") {
  const Graph star = star_graph(6);
  const LcaOracle so(star, make_oracle_config(star, 1));
  for (EdgeId e = 0; e < 6; ++e)
    for (int rep = 0; rep < 3; ++rep) {
      QueryLedger led;
      CHECK(so.lca_etest(e, led) == Catch::Approx(1.0 / 6));
    }
  std::uint64_t queries = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_gnm(300, 900 + 100 * seed, seed);
    const LcaOracle orc(g, make_oracle_config(g, seed));
    const double d = double(orc.config().d);
    const double top = (std::pow(2.0, orc.config().J + 2) - 1) / d;
    for (EdgeId e = 0; e < 1000; ++e, ++queries) {
      QueryLedger led;
      const double w = orc.lca_etest(e, led);  // throws on a ledger violation
      REQUIRE(w >= 1.0 / d - 1e-15);
      REQUIRE(w <= top + 1e-12);
      REQUIRE(double(led.probes) <= 4 * w * d + 1e-9);
    }
  }
  CHECK(queries == 10000);
}

TEST_CASE("matching_candidate: consistency and rate") {
  const Graph g = matching_graph(4);  // d = 1, J = 0
  {
    auto cfg = make_oracle_config(g, 3);
    cfg.lambda = 1e12;
    const LcaOracle orc(g, cfg);
    for (std::uint64_t s = 0; s < 1000; ++s) {
      QueryLedger led;
      CHECK_FALSE(orc.matching_candidate(EdgeId(s % 4), led));
    }
  }
  const LcaOracle one(g, make_oracle_config(g, 77));
  QueryLedger a, b;
  CHECK(one.matching_candidate(2, a) == one.matching_candidate(2, b));

  double expected = 0, var = 0;
  std::uint64_t hits = 0;
  const int N = 100000;
  for (int s = 0; s < N; ++s) {
    const LcaOracle orc(g, make_oracle_config(g, derive_seed(9, std::uint64_t(s))));
    QueryLedger led;
    const double p = orc.lca_etest(0, led) / (10 * orc.config().lambda);
    expected += p;
    var += p * (1 - p);
    hits += orc.matching_candidate(0, led);
  }
  CHECK(std::abs(double(hits) - expected) <= 3 * std::sqrt(var));
}

TEST_CASE("oracle_edge examples and matching validity") {
  const Graph g = matching_graph(3);
  std::uint64_t found = 0;
  for (std::uint64_t s = 0; s < 20000 && !found; ++s) {
    const LcaOracle orc(g, make_oracle_config(g, s));
    QueryLedger c;
    if (orc.matching_candidate(0, c)) {
      QueryLedger led;
      CHECK(orc.oracle_edge(0, led));  // isolated edge
      found = s + 1;
    } else {
      QueryLedger led, e;
      CHECK_FALSE(orc.oracle_edge(0, led));
      orc.lca_etest(0, e);
      CHECK(led.probes == e.probes);  // no neighbor scan
    }
  }
  CHECK(found > 0);

  const Graph h = disjoint_union({random_gnm(800, 3000, 4), star_graph(20), matching_graph(100)});
  std::uint64_t nonempty = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const LcaOracle orc(h, make_oracle_config(h, s));
    const auto sw = orc.sweep_all_edges();
    std::vector<EdgeId> M;
    for (std::size_t e = 0; e < h.m(); ++e)
      if (sw.in_matching[e]) M.push_back(EdgeId(e));
    CHECK(is_matching(h, M));
    nonempty += !M.empty();
    if (s < 3) {
      for (std::size_t e = 0; e < h.m(); ++e) {
        QueryLedger led;
        REQUIRE(orc.oracle_edge(EdgeId(e), led) == bool(sw.in_matching[e]));
        REQUIRE(led.probes == sw.query_probes[e]);
      }
    }
  }
  CHECK(nonempty > 0);
}

TEST_CASE("oracle_vertex agrees with incident oracle_edge calls") {
  const Graph g = disjoint_union({random_gnm(300, 1200, 2), matching_graph(50), empty_graph(1)});
  const Vertex iso = Vertex(g.n() - 1);
  PrfStream pick(4, Domain::kSampler);
  for (int i = 0; i < 1000; ++i) {
    const LcaOracle orc(g, make_oracle_config(g, pick.below(40)));
    const Vertex v = Vertex(pick.below(g.n()));
    bool any = false;
    for (EdgeId e : g.incident(v)) {
      QueryLedger led;
      any |= orc.oracle_edge(e, led);
    }
    QueryLedger a, b;
    const bool ans = orc.oracle_vertex(v, a);
    REQUIRE(ans == any);
    REQUIRE(orc.oracle_vertex(v, b) == ans);
    REQUIRE(a.probes == b.probes);
  }
  const LcaOracle orc(g, make_oracle_config(g, 1));
  QueryLedger led;
  CHECK_FALSE(orc.oracle_vertex(iso, led));
  // a vertex whose single edge is matched
  bool seen = false;
  for (std::uint64_t s = 0; s < 20000 && !seen; ++s) {
    const LcaOracle o2(g, make_oracle_config(g, s));
    QueryLedger l1;
    const EdgeId lone = EdgeId(1200);  // first matching edge
    if (o2.oracle_edge(lone, l1)) {
      QueryLedger l2;
      CHECK(o2.oracle_vertex(g.edge(lone).u, l2));
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("config validation") {
  const Graph g = complete_graph(5);
  auto cfg = make_oracle_config(g, 1);
  cfg.lambda = 100;
  CHECK_THROWS_AS(LcaOracle(g, cfg), std::invalid_argument);
  cfg = make_oracle_config(g, 1);
  cfg.c = 1.5;
  CHECK_THROWS_AS(LcaOracle(g, cfg), std::invalid_argument);
  CHECK(make_oracle_config(g, 1).lambda == 400.0);
}
