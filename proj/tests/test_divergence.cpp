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
#include "mmest/divergence.hpp"

using namespace mmest;

namespace {

double choose(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

// Vertex 0 touches edges 0 and 1; six more edges avoid it. m = 8.
Graph fan_graph() {
  return Graph(8, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 7}});
}

}  // namespace

TEST_CASE("bernoulli_kl values") {
  CHECK(bernoulli_kl(0, 0.25) == Catch::Approx(-std::log(0.75)));
  CHECK(bernoulli_kl(0.5, 0.5) == 0.0);
  CHECK(bernoulli_kl(1, 0.5) == Catch::Approx(std::log(2.0)));
  CHECK(std::isinf(bernoulli_kl(0.5, 0)));
  CHECK(bernoulli_kl(0.3, 0.6) == Catch::Approx(0.3 * std::log(0.5) + 0.7 * std::log(0.7 / 0.4)));
  CHECK_THROWS_AS(bernoulli_kl(1.1, 0.5), std::invalid_argument);
  for (double p = 0.05; p < 1; p += 0.05)
    for (double e = -p; e <= 1 - p; e += 0.01) CHECK(bernoulli_kl(p + e, p) <= kl_shift_bound(p, e) + 1e-12);
}

TEST_CASE("pad_bernoulli clamps") {
  CHECK(pad_bernoulli(0, 0.1) == 0.1);
  CHECK(pad_bernoulli(1, 0.1) == 0.9);
  CHECK(pad_bernoulli(0.4, 0.1) == 0.4);
  CHECK_THROWS_AS(pad_bernoulli(0.4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(pad_bernoulli(-0.1, 0.2), std::invalid_argument);
}

TEST_CASE("random_prefix is a distinct subset") {
  const Graph g = random_gnm(30, 60, 2);
  const auto p = random_prefix(g, 20, 9);
  CHECK(p.size() == 20);
  std::vector<EdgeId> s = p;
  std::sort(s.begin(), s.end());
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  CHECK(s.back() < 60);
  CHECK(random_prefix(g, 20, 9) == p);
  CHECK_THROWS_AS(random_prefix(g, 61, 1), std::invalid_argument);
}

TEST_CASE("exact coupling matches the level-1 closed forms") {
  const Graph g = fan_graph();
  const EstimatorConfig cfg = make_estimator_config(g, 2.0, 0.5, 8);  // one scan at level 1
  REQUIRE(coupling_max_prefix(cfg, 1) == Catch::Approx(2.0));
  const double s = 1, m = 8;
  struct Case {
    std::vector<EdgeId> prefix;
    double k_left;
  };
  for (const Case& c : {Case{{}, 2}, Case{{2}, 2}, Case{{0}, 1}, Case{{0, 1}, 0}, Case{{2, 3}, 2}}) {
    const CouplingReport r = exact_coupling(g, 0, c.prefix, cfg);
    const double R = m - c.prefix.size();
    CHECK(r.p_iid == Catch::Approx(std::pow(1 - 2 / m, s)));
    CHECK(r.p_other == Catch::Approx(choose(R - c.k_left, s) / choose(R, s)));
    CHECK(r.tvd == Catch::Approx(std::abs(r.p_iid - r.p_other)));
  }
  // both incident edges in the prefix: the vertex always passes
  CHECK(exact_coupling(g, 0, {0, 1}, cfg).p_other == 1.0);
  CHECK_THROWS_AS(exact_coupling(g, 0, {2, 3, 4}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(exact_coupling(random_gnm(10, 9, 1), 0, {}, cfg), std::invalid_argument);
}

TEST_CASE("sampled coupling agrees with the exact one") {
  const Graph g = fan_graph();
  const EstimatorConfig cfg = make_estimator_config(g, 2.0, 0.5, 8);
  const std::vector<EdgeId> prefix{0};
  const CouplingReport ex = exact_coupling(g, 0, prefix, cfg);
  const std::uint64_t N = 20000;
  const CouplingReport r = stream_coupling_experiment(g, 0, 1, prefix, N, 5, cfg);
  CHECK(r.t == 1);
  CHECK(std::abs(r.p_iid - ex.p_iid) <= 4 * std::sqrt(ex.p_iid * (1 - ex.p_iid) / N));
  CHECK(std::abs(r.p_other - ex.p_other) <= 4 * std::sqrt(ex.p_other * (1 - ex.p_other) / N));
  CHECK(r.ci.lo <= r.tvd);
  CHECK(r.tvd <= r.ci.hi);
  const CouplingReport again = stream_coupling_experiment(g, 0, 1, prefix, N, 5, cfg);
  CHECK(again.pass_iid == r.pass_iid);
  CHECK(again.pass_other == r.pass_other);
}

TEST_CASE("IID control arm stays within noise") {
  const Graph g = random_gnm(200, 1000, 5);
  const EstimatorConfig cfg = make_estimator_config(g);
  const CouplingReport c = stream_coupling_experiment(g, 0, 2, {}, 4000, 3, cfg, CouplingArm::kIidControl);
  CHECK(c.t == 0);
  CHECK(c.noise_floor > 0);
  CHECK(c.tvd <= 2 * c.noise_floor);
}

TEST_CASE("coupling argument checks") {
  const Graph g = random_gnm(50, 100, 1);
  const EstimatorConfig cfg = make_estimator_config(g);
  CHECK_THROWS_AS(stream_coupling_experiment(g, 0, 0, {}, 10, 1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(stream_coupling_experiment(g, 0, cfg.J + 2, {}, 10, 1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(stream_coupling_experiment(g, 0, 1, {}, 0, 1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(stream_coupling_experiment(g, 99, 1, {}, 10, 1, cfg), std::invalid_argument);
  const auto big = random_prefix(g, 60, 1);
  CHECK_THROWS_AS(stream_coupling_experiment(g, 0, 1, big, 10, 1, cfg), std::invalid_argument);
}
