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
#include "mmest/estimator.hpp"
#include "mmest/estimator_checks.hpp"
#include "mmest/matching.hpp"
#include "mmest/stats.hpp"

using namespace mmest;

TEST_CASE("config defaults and truncation level") {
  const Graph g = random_gnm(100, 300, 1);
  const auto cfg = make_estimator_config(g);
  CHECK(cfg.d == 100);
  CHECK(cfg.J == 5);  // floor(log2 100) - 1
  CHECK(cfg.sample_budget == 300);
  CHECK_NOTHROW(cfg.validate());
  // ln 100 = 4.6; 2 log2(4.6) = 4.4 -> ceil 5
  CHECK(truncation_level(5, 2.0, 100) == 0);
  CHECK(truncation_level(20, 2.0, 100) == 15);
  CHECK(truncation_level(3, 2.0, 2) == 3);
  CHECK_THROWS_AS(make_estimator_config(star_graph(10), 2, 0.5, 5), std::invalid_argument);
  EstimatorConfig bad = cfg;
  bad.c = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.delta = 0.7;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("vtest examples") {
  SECTION("isolated vertex passes with S = 0") {
    const Graph g = disjoint_union({complete_graph(4), empty_graph(1)});
    const auto cfg = make_estimator_config(g);
    EdgeStream s(g, StreamMode::kIid, 3);
    for (int level = 0; level <= cfg.J + 1; ++level) {
      const auto r = vtest(level, 4, s, cfg);
      CHECK(r.passed);
      CHECK(r.s_final == 0.0);
    }
  }
  SECTION("star center fails on the first scanned edge") {
    const Graph g = star_graph(8);
    const auto cfg = make_estimator_config(g, 2.0, 0.5, 8);
    EdgeStream s(g, StreamMode::kIid, 3);
    const auto r = vtest(1, 0, s, cfg);
    CHECK_FALSE(r.passed);
    CHECK(r.samples_used == 1);
    CHECK(r.s_final == 1.0);
  }
  SECTION("single edge, one scan, fails with probability one") {
    const Graph g(2, {{0, 1}});
    const auto cfg = make_estimator_config(g, 2.0, 0.5, 1);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      EdgeStream s(g, StreamMode::kIid, seed);
      CHECK_FALSE(vtest(1, 1, s, cfg).passed);
    }
  }
  SECTION("level out of range") {
    const Graph g = complete_graph(4);
    const auto cfg = make_estimator_config(g);
    EdgeStream s(g, StreamMode::kIid, 3);
    CHECK_THROWS_AS(vtest(cfg.J + 2, 0, s, cfg), std::invalid_argument);
  }
}

TEST_CASE("K3 edge-test distribution by enumeration of all streams") {
  // d = 2, J = 0: one level, each endpoint test scans floor(3/2) = 1 edge and
  // passes iff that edge misses it. Exactly one of the three edges misses a
  // given vertex, so P[M_e = 3/2] = 1/9 and P[M_e = 1/2] = 8/9.
  const Graph g = complete_graph(3);
  const auto cfg = make_estimator_config(g, 2.0, 0.5, 2);
  REQUIRE(cfg.J == 0);
  int high = 0;
  for (EdgeId a = 0; a < 3; ++a)
    for (EdgeId b = 0; b < 3; ++b) {
      ScriptedStream s(g, {a, b});
      const auto r = etest(0, 1, s, cfg);
      const bool misses_0 = g.edge(a).u != 0 && g.edge(a).v != 0;
      const bool misses_1 = g.edge(b).u != 1 && g.edge(b).v != 1;
      const bool expect_high = misses_0 && misses_1;
      CHECK(r.weight == Catch::Approx(expect_high ? 1.5 : 0.5));
      high += r.weight > 1.0;
    }
  CHECK(high == 1);
}

TEST_CASE("etest examples") {
  SECTION("weight never below 1/d on an isolated edge") {
    const Graph g = disjoint_union({matching_graph(1), random_gnm(200, 600, 2)});
    const auto cfg = make_estimator_config(g);
    EdgeStream s(g, StreamMode::kIid, 1);
    int all_levels = 0;
    for (int t = 0; t < 200; ++t) {
      const auto r = etest(0, 1, s, cfg);
      CHECK(r.weight >= 1.0 / double(cfg.d));
      all_levels += r.level == cfg.J + 1;
    }
    // Passing every level is implied by never drawing the edge itself during
    // the top-level scans of either endpoint.
    double scans = 0;
    for (int j = 1; j <= cfg.J + 1; ++j)
      scans += 2 * std::floor(std::pow(2.0, j - 1) * double(cfg.m) / double(cfg.d));
    const double lb = std::pow(1.0 - 1.0 / double(cfg.m), scans);
    CHECK(all_levels / 200.0 >= lb - 3 * std::sqrt(lb * (1 - lb) / 200));
  }
  SECTION("endpoint failing level 1 deterministically gives 1/d") {
    const Graph g = star_graph(6);
    const auto cfg = make_estimator_config(g, 2.0, 0.5, 6);
    EdgeStream s(g, StreamMode::kIid, 1);
    for (int t = 0; t < 20; ++t) CHECK(etest(0, 3, s, cfg).weight == Catch::Approx(1.0 / 6));
  }
  SECTION("truncation 0 and J+1; coupled ordering") {
    const Graph g = random_gnm(150, 600, 3);
    auto cfg = make_estimator_config(g);
    cfg.truncation = 0;
    EdgeStream s(g, StreamMode::kIid, 2);
    for (int t = 0; t < 50; ++t) {
      const auto e = g.edge(EdgeId(t));
      CHECK(etest_truncated(e.u, e.v, s, cfg).weight == Catch::Approx(1.0 / 150));
    }
    for (int cut : {cfg.J + 1, 2}) {
      cfg.truncation = cut;
      for (int t = 0; t < 10000; ++t) {
        const auto e = g.edge(EdgeId(t % g.m()));
        EdgeStream a(g, StreamMode::kIid, std::uint64_t(t)), b(g, StreamMode::kIid, std::uint64_t(t));
        const double full = etest(e.u, e.v, a, cfg).weight;
        const double tr = etest_truncated(e.u, e.v, b, cfg).weight;
        if (cut == cfg.J + 1) REQUIRE(tr == full);
        else REQUIRE(tr <= full);
      }
    }
  }
}

TEST_CASE("hard sample bounds hold on adversarial scripted streams") {
  const Graph g = disjoint_union({star_graph(30), complete_graph(12), matching_graph(20)});
  const auto cfg = make_estimator_config(g);
  std::vector<std::vector<EdgeId>> scripts;
  scripts.push_back({0});                        // star edge forever
  scripts.push_back({EdgeId(g.m() - 1)});        // one matching edge forever
  std::vector<EdgeId> clique;
  for (EdgeId e = 30; e < 30 + 66; ++e) clique.push_back(e);
  scripts.push_back(clique);
  for (const auto& sc : scripts)
    for (const Edge& e : g.edges()) {
      ScriptedStream s(g, sc, true);
      const auto r = etest(e.u, e.v, s, cfg);
      CHECK(double(r.samples_used) <= 4.0 * r.weight * double(cfg.m) + 1e-9);
      CHECK(r.weight <= (std::pow(2.0, cfg.J + 2) - 1) / double(cfg.d) + 1e-12);
    }
  const detail::LevelTables tab(cfg, cfg.J + 1);
  for (int level = 1; level <= cfg.J + 1; ++level)
    for (Vertex v = 0; v < g.n(); v += 7) {
      ScriptedStream s(g, scripts[2], true);
      const auto r = vtest(level, v, s, cfg);
      CHECK(double(r.samples_used) <= tab.vbound[level] + 1e-9);
      CHECK(r.passed == (r.s_final < cfg.delta));
    }
}

TEST_CASE("sample_estimate examples") {
  const Graph star = star_graph(9);
  const auto cfg = make_estimator_config(star, 2.0, 0.5, 9);
  EdgeStream s(star, StreamMode::kIid, 1);
  CHECK(sample_estimate(s, 7, cfg) == Catch::Approx(1.0));  // m/d
  CHECK_THROWS_AS(sample_estimate(s, 0, cfg), std::invalid_argument);

  const Graph mg = matching_graph(50);
  const auto mc = make_estimator_config(mg);  // d = n = 100
  std::vector<double> est;
  for (std::uint64_t t = 0; t < 21; ++t) {
    EdgeStream st(mg, StreamMode::kIid, derive_seed(5, t));
    est.push_back(sample_estimate(st, 50, mc));
  }
  const double med = median(est);
  CHECK(med >= 50.0 / 4);
  CHECK(med <= 50.0 * 4);
}

TEST_CASE("alg_iid examples") {
  const Graph g = copies(complete_graph(4), 20);
  SECTION("budget too small for one batch") {
    const auto cfg = make_estimator_config(g, 2.0, 0.5, std::nullopt, 0);
    EdgeStream s(g, StreamMode::kIid, 1);
    const auto r = alg_iid(s, cfg);
    CHECK_FALSE(r.completed);
    CHECK(r.estimate == 0.0);
    CHECK(r.samples_used == 0);
  }
  SECTION("band and tightening with budget") {
    auto ratios = [&](std::uint64_t budget) {
      const auto cfg = make_estimator_config(g, 2.0, 0.5, std::nullopt, budget);
      std::vector<double> out;
      for (std::uint64_t t = 0; t < 21; ++t) {
        EdgeStream s(g, StreamMode::kIid, derive_seed(11, t));
        const auto r = alg_iid(s, cfg);
        CHECK(r.samples_used <= budget);
        out.push_back(r.estimate / 40.0);
      }
      return out;
    };
    const auto a = ratios(g.m()), b = ratios(10 * g.m());
    CHECK(median(a) >= 1.0 / 32);
    CHECK(median(a) <= 32.0);
    const double iqr_a = quantile(a, 0.75) - quantile(a, 0.25);
    const double iqr_b = quantile(b, 0.75) - quantile(b, 0.25);
    CHECK(iqr_b < iqr_a);
  }
}

TEST_CASE("permutation_peeling preconditions, single pass, budget") {
  const Graph sparse = cycle_graph(50);
  const auto scfg = make_estimator_config(sparse);
  EdgeStream ps(sparse, StreamMode::kPermutation, 1);
  CHECK_THROWS_AS(permutation_peeling(ps, scfg), PreconditionError);
  EdgeStream iid(sparse, StreamMode::kIid, 1);
  CHECK_THROWS_AS(permutation_peeling(iid, scfg), PreconditionError);

  const Graph g = random_gnm(200, 2000, 9);
  const auto cfg = make_estimator_config(g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EdgeStream s(g, StreamMode::kPermutation, seed);
    const auto r = permutation_peeling(s, cfg, 4.0);
    const double ln = std::log(200.0);
    CHECK(r.cursor_monotone);
    CHECK(double(r.run.samples_used) <= 4.0 * 2000 / (ln * ln));
    CHECK(r.truncation == truncation_level(cfg.J, 2.0, 200));
  }
}

TEST_CASE("oversampling examples") {
  const auto r = oversampling_check(bernoulli_sum(30, 0.005), 0.5, 20, 100000, 1);
  const double exact = 1.0 - std::pow(0.995, 30);
  CHECK(std::abs(r.p_hat - exact) < 4 * std::sqrt(exact * (1 - exact) / 1e5));
  CHECK(r.p_bar_hat <= r.p_hat / 2 + 3 * r.se_bar);
  const auto z = oversampling_check(bernoulli_sum(10, 0.0), 0.5, 5, 10000, 1);
  CHECK(z.p_hat == 0.0);
  CHECK(z.p_bar_hat == 0.0);
  CHECK_NOTHROW(oversampling_check({{1.0, 1.0 / 6}}, 0.5, 4, 10000, 2));
  CHECK_THROWS_AS(oversampling_check(bernoulli_sum(3, 0.2), 0.5, 4, 100, 2), std::invalid_argument);
  CHECK_THROWS_AS(oversampling_check({{1.5, 0.01}}, 0.5, 4, 100, 2), std::invalid_argument);
}

TEST_CASE("edge mass relative to MM stays in the recorded band") {
  for (const Graph& g : {random_gnm(100, 400, 2), copies(complete_graph(5), 20), grid_graph(10, 10)}) {
    const auto cfg = make_estimator_config(g);
    const double ratio = edge_mass(g, cfg, 100, 3) / double(exact_mm(g));
    CHECK(ratio >= 1.0 / 32);
    CHECK(ratio <= 32.0);
  }
}
