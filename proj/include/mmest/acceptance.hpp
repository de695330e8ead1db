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

// End-to-end acceptance checks. Each criterion returns deterministic
// metrics and rows (written as criterion_NN.{json,csv}) plus a pass flag;
// wall times go to a separate timing file.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mmest/construction.hpp"
#include "mmest/distributions.hpp"
#include "mmest/divergence.hpp"
#include "mmest/estimator.hpp"
#include "mmest/estimator_checks.hpp"
#include "mmest/graph.hpp"
#include "mmest/greedy_lab.hpp"
#include "mmest/groups.hpp"
#include "mmest/harness.hpp"
#include "mmest/kdegree.hpp"
#include "mmest/lca.hpp"
#include "mmest/matching.hpp"
#include "mmest/peeling.hpp"
#include "mmest/prf.hpp"
#include "mmest/stats.hpp"
#include "mmest/stream.hpp"
#include "mmest/subgraph.hpp"

namespace mmest::acceptance {

struct Options {
  std::uint64_t seed = 2026;
  int threads = 1;
  bool quick = false;
  // Negative control: overrides delta in the estimator checks without
  // validation.
  std::optional<double> inject_delta;
  // Scale used by the determinism rerun (criterion 13).
  bool determinism_full = false;
};

struct Outcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  json metrics = json::object();
  CsvTable rows{{"item"}};
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 = none
};

struct CorpusGraph {
  std::string name;
  Graph g;
  std::size_t mm = 0;
};

// Twenty graphs with m <= 10^4: random, stars, cliques, paddings and more.
inline const std::vector<CorpusGraph>& corpus() {
  static const std::vector<CorpusGraph> c = [] {
    std::vector<std::pair<std::string, Graph>> gs;
    gs.push_back({"gnm_200_1000", random_gnm(200, 1000, 11)});
    gs.push_back({"gnm_2000_10000", random_gnm(2000, 10000, 12)});
    gs.push_back({"gnm_500_600", random_gnm(500, 600, 13)});
    gs.push_back({"bip_300_300_3000", random_bipartite(300, 300, 3000, 14)});
    gs.push_back({"star_500", star_graph(500)});
    gs.push_back({"star_2000", star_graph(2000)});
    gs.push_back({"K20", complete_graph(20)});
    gs.push_back({"K127", complete_graph(127)});
    gs.push_back({"381xK7", copies(complete_graph(7), 381)});
    gs.push_back({"20xK4", copies(complete_graph(4), 20)});
    gs.push_back({"matching_400", matching_graph(400)});
    gs.push_back({"matching_50", matching_graph(50)});
    gs.push_back({"path_1000", path_graph(1000)});
    gs.push_back({"cycle_999", cycle_graph(999)});
    gs.push_back({"grid_30x30", grid_graph(30, 30)});
    gs.push_back({"circulant_400_10", circulant_graph(400, 10)});
    {
      PairBuild pb = build_pair(4, 2);
      gs.push_back({"pair_G_c4k2", pb.G});
      gs.push_back({"pair_H_c4k2", pb.H});
    }
    gs.push_back({"padded_base_G_c6", degree_pad(build_base_pair(6).first).graph});
    gs.push_back({"star100+K30+matching100",
                  disjoint_union({star_graph(100), complete_graph(30), matching_graph(100)})});
    std::vector<CorpusGraph> out;
    for (auto& [name, g] : gs) {
      const std::size_t mm = exact_mm(g);
      out.push_back({name, std::move(g), mm});
    }
    return out;
  }();
  return c;
}

namespace detail {

inline std::uint64_t scaled(const Options& o, std::uint64_t full, std::uint64_t quick) {
  return o.quick ? quick : full;
}

inline std::string s(std::uint64_t x) { return std::to_string(x); }
inline std::string s(double x) { return fmt_num(x); }

inline EstimatorConfig estimator_cfg(const Graph& g, const Options& o) {
  EstimatorConfig cfg = make_estimator_config(g);
  if (o.inject_delta) cfg.delta = *o.inject_delta;
  return cfg;
}

inline double median_iid(const Graph& g, const EstimatorConfig& cfg, std::uint64_t seed,
                         int runs) {
  std::vector<double> v;
  for (int r = 0; r < runs; ++r) {
    EdgeStream st(g, StreamMode::kIid, derive_seed(seed, static_cast<std::uint64_t>(r), 31));
    v.push_back(alg_iid(st, cfg).estimate);
  }
  return median(v);
}

inline double median_perm(const Graph& g, const EstimatorConfig& cfg, std::uint64_t seed,
                          int runs, bool& monotone, bool& within_budget) {
  std::vector<double> v;
  const double ln = std::log(static_cast<double>(g.n()));
  const double cap = 4.0 * static_cast<double>(g.m()) / (ln * ln);
  for (int r = 0; r < runs; ++r) {
    EdgeStream st(g, StreamMode::kPermutation,
                  derive_seed(seed, static_cast<std::uint64_t>(r), 37));
    const PermutationResult pr = permutation_peeling(st, cfg, 4.0);
    monotone = monotone && pr.cursor_monotone;
    within_budget = within_budget && static_cast<double>(pr.run.samples_used) <= cap + 1e-9;
    v.push_back(pr.run.estimate);
  }
  return median(v);
}

}  // namespace detail

// 1. Sample-budget invariants over randomized vtest/etest calls.
inline Outcome criterion_sample_budget(const Options& o) {
  Outcome out;
  out.id = 1;
  out.name = "sample-budget invariants";
  out.time_limit = 300;
  const auto& cg = corpus();
  const std::uint64_t total = detail::scaled(o, 100000, 20000);
  const std::uint64_t per = total / cg.size();
  struct Tally {
    std::uint64_t calls = 0, vtests = 0, etests = 0, violations = 0, exhausted = 0;
    std::string first;
  };
  auto tallies = parallel_map(cg.size(), o.threads, [&](std::uint64_t gi) {
    Tally t;
    const Graph& g = cg[gi].g;
    const EstimatorConfig cfg = detail::estimator_cfg(g, o);
    for (std::uint64_t i = 0; i < per; ++i) {
      const std::uint64_t ks = derive_seed(o.seed, gi * 1000003 + i, 101);
      PrfStream pick(ks, Domain::kSampler);
      const std::uint64_t kind = pick.below(10);
      const bool is_v = kind < 4 || kind == 8;
      ++t.calls;
      try {
        auto run = [&](auto& st) {
          if (is_v) {
            ++t.vtests;
            const int level = 1 + static_cast<int>(pick.below(cfg.J + 1));
            vtest(level, Vertex(pick.below(g.n())), st, cfg);
          } else {
            ++t.etests;
            const Edge& e = g.edge(EdgeId(pick.below(g.m())));
            etest(e.u, e.v, st, cfg);
          }
        };
        if (kind < 8) {
          EdgeStream st(g, StreamMode::kIid, ks);
          run(st);
        } else if (kind == 8) {
          EdgeStream st(g, StreamMode::kPermutation, ks);
          run(st);
        } else {
          // Adversarial: cycle through edges around a random edge.
          const Edge& e = g.edge(EdgeId(pick.below(g.m())));
          std::vector<EdgeId> script;
          for (Vertex x : {e.u, e.v})
            for (EdgeId f : g.incident(x)) {
              script.push_back(f);
              const Vertex y = g.other(f, x);
              for (EdgeId h : g.incident(y)) {
                if (script.size() >= 256) break;
                script.push_back(h);
              }
            }
          ScriptedStream st(g, script, true);
          run(st);
        }
      } catch (const InvariantViolation& ex) {
        if (t.violations++ == 0) t.first = ex.what();
      } catch (const StreamExhausted&) {
        ++t.exhausted;
      }
    }
    return t;
  });
  out.rows = CsvTable({"graph", "calls", "vtests", "etests", "violations", "exhausted"});
  Tally sum;
  for (std::size_t gi = 0; gi < cg.size(); ++gi) {
    const Tally& t = tallies[gi];
    out.rows.add({cg[gi].name, detail::s(t.calls), detail::s(t.vtests), detail::s(t.etests),
                  detail::s(t.violations), detail::s(t.exhausted)});
    sum.calls += t.calls;
    sum.violations += t.violations;
    sum.exhausted += t.exhausted;
    if (sum.first.empty()) sum.first = t.first;
  }
  out.metrics["calls"] = sum.calls;
  out.metrics["violations"] = sum.violations;
  out.metrics["exhausted_permutation_streams"] = sum.exhausted;
  if (!sum.first.empty()) out.metrics["first_violation"] = sum.first;
  out.passed = sum.violations == 0;
  out.detail = detail::s(sum.calls) + " calls, " + detail::s(sum.violations) + " violations";
  return out;
}

// 2. Offline peeling sandwich.
inline Outcome criterion_peeling(const Options&) {
  Outcome out;
  out.id = 2;
  out.name = "offline peeling sandwich";
  out.time_limit = 60;
  const PeelingConfig cfg{2.0, 0.5, std::nullopt};
  const double cap = peeling_load_cap(cfg);
  out.rows = CsvTable({"graph", "cover_size", "delta_cover", "sum_M", "lower_ok",
                       "half_lower_ok", "max_load", "cap_ok", "cover_ok", "scaled_fm_ok", "mm"});
  std::size_t lower_fail = 0, other_fail = 0;
  std::string first;
  for (const auto& cg : corpus()) {
    const PeelingResult r = alg_global(cg.g, cfg);
    const double dc = cfg.delta * static_cast<double>(r.cover.members.size());
    const bool lower = dc <= r.sum_weight + 1e-9;
    const bool half = dc / 2.0 <= r.sum_weight + 1e-9;
    double maxload = 0.0;
    for (double x : vertex_loads(cg.g, r.matching)) maxload = std::max(maxload, x);
    const bool cap_ok = maxload <= cap + 1e-9;
    const bool cover_ok = is_vertex_cover(cg.g, r.cover);
    FractionalMatching scaled = r.matching;
    for (double& w : scaled.weights) w /= cap;
    const bool fm_ok = is_fractional_matching(cg.g, scaled);
    if (!lower) {
      ++lower_fail;
      if (first.empty())
        first = cg.name + ": delta|C| = " + fmt_num(dc) + " > sum M = " + fmt_num(r.sum_weight);
    }
    if (!half || !cap_ok || !cover_ok || !fm_ok) ++other_fail;
    out.rows.add({cg.name, detail::s(std::uint64_t(r.cover.members.size())), detail::s(dc),
                  detail::s(r.sum_weight), lower ? "1" : "0", half ? "1" : "0",
                  detail::s(maxload), cap_ok ? "1" : "0", cover_ok ? "1" : "0",
                  fm_ok ? "1" : "0", detail::s(std::uint64_t(cg.mm))});
  }
  out.metrics["lower_bound_failures"] = lower_fail;
  out.metrics["other_failures"] = other_fail;
  if (!first.empty()) out.metrics["first_lower_bound_failure"] = first;
  out.passed = lower_fail == 0 && other_fail == 0;
  out.detail = "delta|C| <= sum M fails on " + detail::s(std::uint64_t(lower_fail)) +
               " graphs; cap/cover/fractional/half-bound failures: " +
               detail::s(std::uint64_t(other_fail));
  return out;
}

struct SeparationPair {
  std::string name;
  Graph hi, lo;
};

inline std::vector<SeparationPair> separation_pairs() {
  std::vector<SeparationPair> p;
  p.push_back({"381xK7_vs_K127", copies(complete_graph(7), 381), complete_graph(127)});
  p.push_back({"gnm_2400_8001_vs_K127", random_gnm(2400, 8001, 21), complete_graph(127)});
  return p;
}

namespace detail {

inline Outcome separation(const Options& o, int id, bool perm) {
  Outcome out;
  out.id = id;
  out.name = perm ? "permutation variant" : "estimator separation";
  out.time_limit = perm ? 0 : 600;
  const int runs = 5;
  const std::uint64_t trials = 20;
  const std::uint64_t need = perm ? 16 : 18;
  out.rows = CsvTable({"pair", "trial", "median_hi", "median_lo", "correct"});
  bool all = true, monotone = true, budget_ok = true;
  json pairs = json::array();
  for (const auto& pr : separation_pairs()) {
    if (perm && pr.name != "381xK7_vs_K127") continue;
    const std::size_t mm_hi = exact_mm(pr.hi), mm_lo = exact_mm(pr.lo);
    const EstimatorConfig ch = estimator_cfg(pr.hi, o), cl = estimator_cfg(pr.lo, o);
    struct Row {
      double hi, lo;
      bool mono, budget;
    };
    auto res = parallel_map(trials, o.threads, [&](std::uint64_t t) {
      const std::uint64_t ts = derive_seed(o.seed, t, perm ? 501 : 301);
      Row r{0, 0, true, true};
      if (perm) {
        r.hi = median_perm(pr.hi, ch, derive_seed(ts, 0), runs, r.mono, r.budget);
        r.lo = median_perm(pr.lo, cl, derive_seed(ts, 1), runs, r.mono, r.budget);
      } else {
        r.hi = median_iid(pr.hi, ch, derive_seed(ts, 0), runs);
        r.lo = median_iid(pr.lo, cl, derive_seed(ts, 1), runs);
      }
      return r;
    });
    std::uint64_t correct = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const bool ok = res[t].hi > res[t].lo;
      correct += ok;
      monotone = monotone && res[t].mono;
      budget_ok = budget_ok && res[t].budget;
      out.rows.add({pr.name, s(t), s(res[t].hi), s(res[t].lo), ok ? "1" : "0"});
    }
    json pj;
    pj["pair"] = pr.name;
    pj["mm_hi"] = mm_hi;
    pj["mm_lo"] = mm_lo;
    pj["gap"] = static_cast<double>(mm_hi) / static_cast<double>(mm_lo);
    pj["m_hi"] = pr.hi.m();
    pj["m_lo"] = pr.lo.m();
    pj["correct"] = correct;
    pairs.push_back(pj);
    const bool gap_ok = mm_hi >= 16 * mm_lo;
    all = all && gap_ok && correct >= need;
    out.detail += (out.detail.empty() ? "" : "; ") + pr.name + " " + s(correct) + "/20";
  }
  out.metrics["pairs"] = pairs;
  out.metrics["runs_per_median"] = runs;
  if (perm) {
    out.metrics["cursor_monotone"] = monotone;
    out.metrics["within_budget"] = budget_ok;
    all = all && monotone && budget_ok;
  }
  out.passed = all;
  return out;
}

}  // namespace detail

// 3. Estimator separation with budget m.
inline Outcome criterion_separation(const Options& o) { return detail::separation(o, 3, false); }

// 4. Median estimate / MM within [1/32, 32] on every corpus graph.
inline Outcome criterion_ratio_band(const Options& o) {
  Outcome out;
  out.id = 4;
  out.name = "estimator ratio band";
  const auto& cg = corpus();
  const std::uint64_t trials = detail::scaled(o, 21, 7);
  auto med = parallel_map(cg.size(), o.threads, [&](std::uint64_t gi) {
    const EstimatorConfig cfg = detail::estimator_cfg(cg[gi].g, o);
    std::vector<double> v;
    for (std::uint64_t t = 0; t < trials; ++t) {
      EdgeStream st(cg[gi].g, StreamMode::kIid, derive_seed(o.seed, gi * 1000 + t, 401));
      v.push_back(alg_iid(st, cfg).estimate);
    }
    return median(v);
  });
  out.rows = CsvTable({"graph", "mm", "median_estimate", "ratio", "in_band"});
  std::size_t bad = 0;
  double lo = 1e300, hi = 0;
  for (std::size_t gi = 0; gi < cg.size(); ++gi) {
    const double ratio = med[gi] / static_cast<double>(cg[gi].mm);
    const bool ok = ratio >= 1.0 / 32 && ratio <= 32;
    bad += !ok;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    out.rows.add({cg[gi].name, detail::s(std::uint64_t(cg[gi].mm)), detail::s(med[gi]),
                  detail::s(ratio), ok ? "1" : "0"});
  }
  out.metrics["trials"] = trials;
  out.metrics["min_ratio"] = lo;
  out.metrics["max_ratio"] = hi;
  out.metrics["out_of_band"] = bad;
  out.passed = bad == 0;
  out.detail = "ratios in [" + fmt_num(lo) + ", " + fmt_num(hi) + "]";
  return out;
}

// 5. Permutation streams: single pass, budget, separation.
inline Outcome criterion_permutation(const Options& o) { return detail::separation(o, 5, true); }

// 6. LCA validity, consistency, probe bounds, matching size.
inline Outcome criterion_lca(const Options& o) {
  Outcome out;
  out.id = 6;
  out.name = "LCA matching validity";
  const auto& cg = corpus();
  const std::uint64_t seeds = detail::scaled(o, 50, 10);
  const std::uint64_t vertex_checks = detail::scaled(o, 100, 25);
  struct Tally {
    std::uint64_t invalid = 0, disagree = 0, violations = 0, queries = 0, over = 0;
    double size_sum = 0.0;
  };
  auto tallies = parallel_map(cg.size(), o.threads, [&](std::uint64_t gi) {
    Tally t;
    const Graph& g = cg[gi].g;
    for (std::uint64_t sd = 0; sd < seeds; ++sd) {
      const std::uint64_t master = derive_seed(o.seed, gi * 1000 + sd, 601);
      LcaOracle orc(g, make_oracle_config(g, master));
      try {
        const auto sw = orc.sweep_all_edges();
        std::vector<EdgeId> M;
        for (std::size_t e = 0; e < g.m(); ++e)
          if (sw.in_matching[e]) M.push_back(EdgeId(e));
        if (!is_matching(g, M)) ++t.invalid;
        t.size_sum += static_cast<double>(M.size());
        std::vector<char> matched(g.n(), 0);
        for (EdgeId e : M) matched[g.edge(e).u] = matched[g.edge(e).v] = 1;
        const double budget = orc.soft_budget();
        for (auto p : sw.query_probes) {
          ++t.queries;
          if (static_cast<double>(p) > budget) ++t.over;
        }
        PrfStream pick(master, Domain::kSampler, 6);
        for (std::uint64_t k = 0; k < vertex_checks; ++k) {
          const Vertex v = Vertex(pick.below(g.n()));
          QueryLedger led;
          if (orc.oracle_vertex(v, led) != (matched[v] != 0)) ++t.disagree;
        }
      } catch (const InvariantViolation&) {
        ++t.violations;
      }
    }
    return t;
  });
  out.rows = CsvTable({"graph", "max_degree", "mm", "mean_size", "size_over_mm", "invalid",
                       "vertex_disagreements", "violations", "over_soft_budget_frac"});
  Tally sum;
  double worst_ratio = 1e300;
  for (std::size_t gi = 0; gi < cg.size(); ++gi) {
    const Tally& t = tallies[gi];
    const double mean_size = t.size_sum / static_cast<double>(seeds);
    const double r = mean_size / static_cast<double>(cg[gi].mm);
    const bool bounded = cg[gi].g.max_degree() <= 16;
    if (bounded) worst_ratio = std::min(worst_ratio, r);
    out.rows.add({cg[gi].name, detail::s(std::uint64_t(cg[gi].g.max_degree())),
                  detail::s(std::uint64_t(cg[gi].mm)), detail::s(mean_size), detail::s(r),
                  detail::s(t.invalid), detail::s(t.disagree), detail::s(t.violations),
                  detail::s(double(t.over) / double(std::max<std::uint64_t>(t.queries, 1)))});
    sum.invalid += t.invalid;
    sum.disagree += t.disagree;
    sum.violations += t.violations;
    sum.queries += t.queries;
    sum.over += t.over;
  }
  const double within = 1.0 - double(sum.over) / double(std::max<std::uint64_t>(sum.queries, 1));
  out.metrics["seeds"] = seeds;
  out.metrics["invalid_matchings"] = sum.invalid;
  out.metrics["vertex_disagreements"] = sum.disagree;
  out.metrics["probe_violations"] = sum.violations;
  out.metrics["queries"] = sum.queries;
  out.metrics["fraction_within_soft_budget"] = within;
  out.metrics["min_size_over_mm_bounded_degree"] = worst_ratio;
  const bool structural = sum.invalid == 0 && sum.disagree == 0 && sum.violations == 0;
  const bool budget_ok = within >= 0.99;
  const bool size_ok = worst_ratio >= 1.0 / 64;
  out.metrics["structural_ok"] = structural;
  out.metrics["budget_ok"] = budget_ok;
  out.metrics["size_ok"] = size_ok;
  out.passed = structural && budget_ok && size_ok;
  out.detail = std::string("validity/consistency/probe bounds ") + (structural ? "ok" : "FAIL") +
               ", within soft budget " + fmt_num(within) + ", min E|M|/MM (deg<=16) " +
               fmt_num(worst_ratio) + (size_ok ? "" : " < 1/64");
  return out;
}

// 7. Hard-instance lemmas on the (c, k) grid.
inline Outcome criterion_hard_instances(const Options&) {
  Outcome out;
  out.id = 7;
  out.name = "hard-instance lemmas";
  out.time_limit = 120;
  out.rows = CsvTable({"c", "k", "n", "m", "witness_matching", "expected", "matching_ok",
                       "witness_cover", "cover_bound", "cover_ok", "structure_ok", "bijection"});
  bool all = true;
  const std::vector<std::pair<std::size_t, int>> grid{{4, 1}, {4, 2}, {6, 2}, {8, 2}};
  for (auto [c, k] : grid) {
    const PairBuild pb = build_pair(c, k);
    std::uint64_t ck = 1;
    for (int i = 0; i < k; ++i) ck *= c;
    const std::uint64_t want = (c + 1) * ck / 2;
    const bool m_ok = pb.witness_matching.size() == want && is_matching(pb.G, pb.witness_matching);
    const std::uint64_t cover_bound = 2 * static_cast<std::uint64_t>(k) * ck;
    const bool c_ok = pb.witness_cover.members.size() <= cover_bound &&
                      is_vertex_cover(pb.H, pb.witness_cover);
    const auto rec = structure_recurrence(c, k);
    bool st_ok = rec.size() == pb.trace_g.size();
    for (std::size_t j = 0; st_ok && j < rec.size(); ++j) {
      const auto& a = pb.trace_g[j];
      const auto& b = pb.trace_h[j];
      const double jj = double(j + 1), cj = std::pow(double(c), jj);
      st_ok = a.N_h == rec[j].N_h && a.N_l == rec[j].N_l && a.d_h == rec[j].d_h &&
              a.d_l == rec[j].d_l && b.N_h == a.N_h && b.N_l == a.N_l && b.d_h == a.d_h &&
              b.d_l == a.d_l && a.d_h > a.d_l &&
              double(a.N_h) <= cj + 2 * jj * cj / double(c) &&
              double(a.N_l) <= cj * double(c) + 2 * jj * cj &&
              double(a.d_h) <= cj + 2 * jj * cj / double(c);
    }
    // The final graphs themselves have exactly two degrees.
    st_ok = st_ok && degree_histogram(pb.G).size() == 2 && degree_histogram(pb.H).size() == 2;
    LevelDegreeInterner in;
    const bool bij = find_degree_bijection(pb.G, pb.H, k, in).ok;
    all = all && m_ok && c_ok && st_ok && bij;
    out.rows.add({detail::s(std::uint64_t(c)), detail::s(std::uint64_t(k)),
                  detail::s(std::uint64_t(pb.G.n())), detail::s(std::uint64_t(pb.G.m())),
                  detail::s(std::uint64_t(pb.witness_matching.size())), detail::s(want),
                  m_ok ? "1" : "0", detail::s(std::uint64_t(pb.witness_cover.members.size())),
                  detail::s(cover_bound), c_ok ? "1" : "0", st_ok ? "1" : "0", bij ? "1" : "0"});
  }
  out.passed = all;
  out.detail = all ? "all (c,k) pass" : "some (c,k) failed";
  return out;
}

// 8. Lift of a small base pair over a searched high-girth group, k = 2.
inline Outcome criterion_lifting(const Options& o) {
  Outcome out;
  out.id = 8;
  out.name = "lifting end-to-end";
  out.time_limit = 600;
  const int k = 2;
  auto [G, H] = build_base_pair(2);
  const std::size_t labels_needed = std::max(G.m(), H.m());
  const GeneratorSearch gs = find_high_girth_generators(labels_needed, 2 * k + 2, 200, o.seed);
  out.rows = CsvTable({"check", "value", "ok"});
  if (!gs.found) {
    out.passed = false;
    out.detail = "generator search failed: " + gs.reason;
    return out;
  }
  const GroupSpec& grp = *gs.found;
  std::vector<std::uint32_t> lab(G.m());
  for (std::size_t i = 0; i < lab.size(); ++i) lab[i] = std::uint32_t(i);
  const LiftedGraph LG = lift(G, grp, lab);
  const LiftedGraph LH = lift(H, grp, std::vector<std::uint32_t>(lab.begin(), lab.begin() + H.m()));
  auto row = [&](const std::string& name, const std::string& v, bool ok) {
    out.rows.add({name, v, ok ? "1" : "0"});
    return ok;
  };
  bool all = true;
  const std::size_t gg = girth(LG.lifted), gh = girth(LH.lifted);
  auto gtext = [](std::size_t x) { return x == kInfiniteGirth ? std::string("inf") : std::to_string(x); };
  all &= row("group", grp.name + " R=" + std::to_string(grp.R), true);
  all &= row("girth_lift_G", gtext(gg), gg >= 6);
  all &= row("girth_lift_H", gtext(gh), gh >= 6);
  // Level-k degrees at sampled fiber vertices.
  LevelDegreeInterner in;
  const auto fG = in.all(G, k), fH = in.all(H, k);
  const auto fLG = in.all(LG.lifted, k), fLH = in.all(LH.lifted, k);
  PrfStream pick(o.seed, Domain::kSampler, 8);
  std::size_t same = 0;
  for (int i = 0; i < 20; ++i) {
    const Vertex v = Vertex(pick.below(G.n()));
    const auto r = static_cast<std::uint32_t>(pick.below(grp.R));
    same += fLG[LG.id(v, r)] == fG[v] && fLH[LH.id(v, r)] == fH[v];
  }
  all &= row("kdeg_preserved_of_20", std::to_string(same), same == 20);
  const std::size_t mg = exact_mm(G), mh = exact_mm(H);
  const std::size_t lg = exact_mm(LG.lifted), lh = exact_mm(LH.lifted);
  all &= row("mm_lift_G", std::to_string(lg) + " in [" + std::to_string(grp.R * mg) + "," +
                              std::to_string(2 * grp.R * mg) + "]",
             grp.R * mg <= lg && lg <= 2 * grp.R * mg);
  all &= row("mm_lift_H", std::to_string(lh) + " in [" + std::to_string(grp.R * mh) + "," +
                              std::to_string(2 * grp.R * mh) + "]",
             grp.R * mh <= lh && lh <= 2 * grp.R * mh);
  const auto rep = verify_indistinguishable(LG.lifted, LH.lifted, k);
  std::string counts;
  for (const auto& pr : rep.rows)
    counts += (counts.empty() ? "" : " ") + pr.form + ":" + std::to_string(pr.count_g) + "/" +
              std::to_string(pr.count_h);
  all &= row("pattern_counts_k2", counts, rep.all_equal);
  out.metrics["group"] = grp.name;
  out.metrics["R"] = grp.R;
  out.metrics["group_girth"] = gs.girth;
  out.metrics["lifted_n"] = LG.lifted.n();
  out.metrics["lifted_m"] = LG.lifted.m();
  out.passed = all;
  out.detail = grp.name + " lift: " + (all ? "all checks pass" : "some checks failed");
  return out;
}

// 9. Distinguishability curve of the YES/NO distributions.
inline Outcome criterion_lower_bound(const Options& o) {
  Outcome out;
  out.id = 9;
  out.name = "lower-bound distinguishability";
  out.time_limit = 600;
  const DistributionPair dp = build_distributions(900, 2, 1, 30);
  const std::uint64_t trials = detail::scaled(o, 400, 200);
  const std::uint64_t Ls = dp.sub_collision_length(), Lf = dp.full_information_length();
  out.rows = CsvTable({"stream_len", "accuracy", "se"});
  json curve = json::array();
  ClassifierReport sub, full;
  for (std::uint64_t L : {std::uint64_t{0}, Ls, 2 * Ls, 4 * Ls, 8 * Ls, std::uint64_t(dp.m()), Lf}) {
    auto hits = parallel_map(trials, o.threads, [&](std::uint64_t t) {
      return classify_once(dp, L, derive_seed(o.seed, L, 901), t);
    });
    ClassifierReport r;
    r.stream_len = L;
    r.trials = trials;
    for (bool h : hits) r.correct += h;
    r.accuracy = double(r.correct) / double(trials);
    r.se = proportion_se(r.correct, trials);
    out.rows.add({detail::s(L), detail::s(r.accuracy), detail::s(r.se)});
    if (L == Ls) sub = r;
    if (L == Lf) full = r;
  }
  // sigma for the upper check is that of a fair coin.
  const double sigma = std::sqrt(0.25 / double(trials));
  const bool sub_ok = sub.accuracy <= 0.55 + 3 * sigma;
  const bool full_ok = full.accuracy >= 0.95;
  out.metrics["n"] = dp.n();
  out.metrics["r"] = dp.r();
  out.metrics["w"] = dp.w();
  out.metrics["m"] = dp.m();
  out.metrics["agreement_order"] = dp.agreement();
  out.metrics["sub_collision_length"] = Ls;
  out.metrics["full_information_length"] = Lf;
  out.metrics["sub_accuracy"] = sub.accuracy;
  out.metrics["full_accuracy"] = full.accuracy;
  out.passed = sub_ok && full_ok;
  out.detail = "accuracy " + fmt_num(sub.accuracy) + " at L=" + detail::s(Ls) + ", " +
               fmt_num(full.accuracy) + " at L=" + detail::s(Lf);
  return out;
}

// 10. Greedy exploration on H^d and H^{d,eps}.
inline Outcome criterion_greedy(const Options& o) {
  Outcome out;
  out.id = 10;
  out.name = "greedy-lab quantitative";
  out.time_limit = 1200;
  out.rows = CsvTable({"check", "params", "value", "bound", "ok"});
  bool all = true;
  auto row = [&](const std::string& c, const std::string& p, double v, double b, bool ok) {
    out.rows.add({c, p, fmt_num(v), fmt_num(b), ok ? "1" : "0"});
    all = all && ok;
  };
  auto sample = [&](const TreeSpec& spec, std::uint64_t trials, std::uint64_t salt) {
    return parallel_map(trials, o.threads, [&](std::uint64_t t) {
      return simulate_one(spec, derive_seed(o.seed, salt), t);
    });
  };
  auto moments = [](const std::vector<ExplorationStats>& v) {
    std::vector<double> t, t2;
    for (auto& x : v) {
      t.push_back(double(x.T));
      t2.push_back(double(x.T) * double(x.T));
    }
    return std::pair{t, t2};
  };
  const std::uint64_t n_hd = detail::scaled(o, 5000, 1000);
  for (int d : {5, 8, 16}) {
    const auto st = sample({TreeKind::kHd, d, 0.0, 64}, n_hd, 1000 + d);
    auto [t, t2] = moments(st);
    const double mu = mean(t), se = std_error(t);
    row("a_mean_T_le_2d", "d=" + std::to_string(d), mu, 2.0 * d, mu <= 2.0 * d + 3 * se);
    const double oracle = expected_root_t(d);
    row("b_mean_T_vs_integral", "d=" + std::to_string(d), mu, oracle,
        std::abs(mu - oracle) <= 3 * se);
  }
  {
    const auto st = sample({TreeKind::kHde, 64, 0.125, 64}, detail::scaled(o, 2000, 500), 2064);
    const double mu = mean(moments(st).first);
    const double lb = hde_mean_lower_bound(64, 0.125);
    row("c_hde_mean_T_ge_bound", "d=64,eps=1/8", mu, lb, mu >= lb);
  }
  {
    std::vector<double> lx, ly;
    for (int d : {16, 32, 64, 128}) {
      const auto st = sample({TreeKind::kHde, d, 0.125, 64}, detail::scaled(o, 20000, 4000), 3000 + d);
      const double mu = mean(moments(st).first);
      lx.push_back(std::log(double(d)));
      ly.push_back(std::log(mu));
      out.rows.add({"d_mean_T", "d=" + std::to_string(d) + ",eps=1/8", fmt_num(mu), "", ""});
    }
    const double slope = ls_slope(lx, ly);
    row("d_scaling_exponent", "d=16..128,eps=1/8", slope, 1.6, slope >= 1.6);
    out.metrics["scaling_exponent"] = slope;
  }
  {
    const std::uint64_t n = detail::scaled(o, 100000, 20000);
    const auto st = sample({TreeKind::kHd, 5, 0.0, 64}, n, 4005);
    std::uint64_t hit = 0;
    for (auto& x : st) hit += x.D >= 12;
    const double p = double(hit) / double(n);
    const double bound = depth_tail_bound(5, 12);
    const double sd = std::sqrt(bound * (1 - bound) / double(n));
    row("e_depth_tail", "d=5,l=12", p, bound, p <= bound + 3 * sd);
  }
  {
    const std::uint64_t n = detail::scaled(o, 10000, 10000);
    {
      const auto st = sample({TreeKind::kHd, 5, 0.0, 64}, n, 5005);
      auto t2 = moments(st).second;
      const double mu = mean(t2), se = std_error(t2);
      const double b = second_moment_bound_hd(5);
      row("f_second_moment_hd", "d=5", mu, b, mu <= b + 3 * se);
    }
    {
      const auto st = sample({TreeKind::kHde, 8, 0.25, 64}, n, 5008);
      auto t2 = moments(st).second;
      const double mu = mean(t2), se = std_error(t2);
      const double b = second_moment_bound_hde(8, 0.25);
      row("f_second_moment_hde", "d=8,eps=1/4", mu, b, mu <= b + 3 * se);
    }
  }
  out.passed = all;
  out.detail = all ? "all sub-checks pass" : "some sub-checks failed";
  return out;
}

// 11. Oversampling inequality on the documented family.
inline Outcome criterion_oversampling(const Options& o) {
  Outcome out;
  out.id = 11;
  out.name = "oversampling lemma";
  const std::uint64_t trials = detail::scaled(o, 100000, 20000);
  const auto x = bernoulli_sum(30, 0.005);
  const OversamplingReport r = oversampling_check(x, 0.5, 20, trials, derive_seed(o.seed, 11));
  const double exact = 1.0 - std::pow(0.995, 30);
  const double se_exact = std::sqrt(exact * (1 - exact) / double(trials));
  const bool match = std::abs(r.p_hat - exact) <= 3 * se_exact;
  const double sigma = std::sqrt(r.se * r.se / 4 + r.se_bar * r.se_bar);
  const bool ineq = r.p_bar_hat <= r.p_hat / 2 + 3 * sigma;
  out.rows = CsvTable({"quantity", "value"});
  out.rows.add({"p_hat", fmt_num(r.p_hat)});
  out.rows.add({"p_exact", fmt_num(exact)});
  out.rows.add({"p_bar_hat", fmt_num(r.p_bar_hat)});
  out.metrics["trials"] = trials;
  out.metrics["p_hat"] = r.p_hat;
  out.metrics["p_exact"] = exact;
  out.metrics["p_bar_hat"] = r.p_bar_hat;
  out.passed = match && ineq;
  out.detail = "p_hat " + fmt_num(r.p_hat) + " (exact " + fmt_num(exact) + "), p_bar_hat " +
               fmt_num(r.p_bar_hat);
  return out;
}

// 12. KL bound sweep, padding properties, IID-vs-IID control.
inline Outcome criterion_divergence(const Options& o) {
  Outcome out;
  out.id = 12;
  out.name = "divergence utilities";
  out.rows = CsvTable({"check", "value", "ok"});
  bool all = true;
  // 1000 grid points (p, eps) with p in (0,1) and p + eps in [0,1].
  std::size_t points = 0, kl_bad = 0, nonneg_bad = 0;
  for (int i = 1; i <= 40; ++i) {
    const double p = i / 41.0;
    for (int j = 0; j < 25; ++j) {
      const double lo = -p, hi = 1.0 - p;
      const double eps = lo + (hi - lo) * (j + 0.5) / 25.0;
      ++points;
      const double kl = bernoulli_kl(p + eps, p);
      if (!(kl <= kl_shift_bound(p, eps) * (1 + 1e-12))) ++kl_bad;
      if (kl < 0 || bernoulli_kl(p, p) != 0.0) ++nonneg_bad;
    }
  }
  out.rows.add({"kl_grid_points", std::to_string(points), "1"});
  out.rows.add({"kl_bound_violations", std::to_string(kl_bad), kl_bad == 0 ? "1" : "0"});
  out.rows.add({"kl_nonneg_or_self_violations", std::to_string(nonneg_bad), nonneg_bad == 0 ? "1" : "0"});
  all = all && kl_bad == 0 && nonneg_bad == 0 && points == 1000;
  std::size_t pad_bad = 0;
  for (double theta : {0.01, 0.1, 0.25, 0.49}) {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      const double p = i / 200.0;
      const double a = pad_bernoulli(p, theta);
      if (pad_bernoulli(a, theta) != a || a < prev) ++pad_bad;
      prev = a;
    }
  }
  out.rows.add({"padding_violations", std::to_string(pad_bad), pad_bad == 0 ? "1" : "0"});
  all = all && pad_bad == 0;
  const Graph g = random_gnm(200, 1000, 5);
  const EstimatorConfig cfg = make_estimator_config(g);
  const CouplingReport c = stream_coupling_experiment(g, 0, 2, {}, detail::scaled(o, 10000, 10000),
                                                      derive_seed(o.seed, 12), cfg,
                                                      CouplingArm::kIidControl);
  const bool ctl = c.tvd <= 2 * c.noise_floor;
  out.rows.add({"iid_control_tvd", fmt_num(c.tvd) + " (floor " + fmt_num(c.noise_floor) + ")",
                ctl ? "1" : "0"});
  all = all && ctl;
  out.metrics["kl_points"] = points;
  out.metrics["control_tvd"] = c.tvd;
  out.metrics["control_noise_floor"] = c.noise_floor;
  out.passed = all;
  out.detail = "KL/padding/control " + std::string(all ? "ok" : "FAIL");
  return out;
}

using CriterionFn = std::function<Outcome(const Options&)>;

inline std::vector<std::pair<int, CriterionFn>> criteria_1_to_12() {
  return {{1, criterion_sample_budget}, {2, criterion_peeling},      {3, criterion_separation},
          {4, criterion_ratio_band},    {5, criterion_permutation},  {6, criterion_lca},
          {7, criterion_hard_instances}, {8, criterion_lifting},     {9, criterion_lower_bound},
          {10, criterion_greedy},       {11, criterion_oversampling}, {12, criterion_divergence}};
}

inline std::string stem(int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "criterion_%02d", id);
  return buf;
}

inline void write_outcome(const Outcome& oc, const std::filesystem::path& dir) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["id"] = oc.id;
  j["name"] = oc.name;
  j["passed"] = oc.passed;
  j["detail"] = oc.detail;
  j["metrics"] = oc.metrics;
  write_text(dir / (stem(oc.id) + ".json"), j.dump(2) + "\n");
  write_text(dir / (stem(oc.id) + ".csv"), oc.rows.str());
}

inline Outcome run_timed(const CriterionFn& f, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome oc = f(o);
  oc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (oc.time_limit > 0 && !o.quick && oc.seconds > oc.time_limit) {
    oc.passed = false;
    oc.detail += " (runtime " + fmt_num(oc.seconds) + "s over limit)";
  }
  return oc;
}

// Runs criteria 1..12 into dir; returns outcomes.
inline std::vector<Outcome> run_core(const Options& o, const std::filesystem::path& dir,
                                     const std::set<int>& only = {}) {
  std::vector<Outcome> res;
  for (auto& [id, f] : criteria_1_to_12()) {
    if (!only.empty() && !only.count(id)) continue;
    Outcome oc = run_timed(f, o);
    write_outcome(oc, dir);
    res.push_back(std::move(oc));
  }
  return res;
}

inline std::vector<std::string> differing_files(const std::filesystem::path& a,
                                                const std::filesystem::path& b) {
  std::vector<std::string> diff;
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  std::set<std::string> names;
  for (auto& dir : {a, b})
    if (std::filesystem::exists(dir))
      for (auto& e : std::filesystem::directory_iterator(dir)) names.insert(e.path().filename().string());
  for (auto& n : names) {
    if (!std::filesystem::exists(a / n) || !std::filesystem::exists(b / n) ||
        slurp(a / n) != slurp(b / n))
      diff.push_back(n);
  }
  return diff;
}

// 13. Same seed, different thread counts: byte-identical outputs.
inline Outcome criterion_determinism(const Options& o, const std::filesystem::path& scratch) {
  Outcome out;
  out.id = 13;
  out.name = "determinism";
  Options a = o;
  a.quick = !o.determinism_full;
  a.threads = 1;
  Options b = a;
  b.threads = std::max(4, o.threads);
  const auto da = scratch / "threads_a", db = scratch / "threads_b";
  std::filesystem::remove_all(da);
  std::filesystem::remove_all(db);
  run_core(a, da);
  run_core(b, db);
  const auto diff = differing_files(da, db);
  std::set<std::string> names;
  for (auto& e : std::filesystem::directory_iterator(da))
    if (e.is_regular_file()) names.insert(e.path().filename().string());
  const std::size_t files = names.size();
  out.rows = CsvTable({"file", "identical"});
  for (const auto& n : names)
    out.rows.add({n, std::find(diff.begin(), diff.end(), n) == diff.end() ? "1" : "0"});
  out.metrics["scale"] = a.quick ? "quick" : "full";
  out.metrics["threads"] = json::array({a.threads, b.threads});
  out.metrics["files_compared"] = files;
  out.metrics["differing"] = diff;
  out.passed = diff.empty() && files == 24;
  out.detail = std::to_string(files) + " files compared at threads " + std::to_string(a.threads) +
               " vs " + std::to_string(b.threads) + ", " + std::to_string(diff.size()) + " differ";
  return out;
}

// Runs the selected criteria (all when `only` is empty), writes per-criterion
// files plus acceptance_summary.json and acceptance_timing.json under dir,
// prints one line per criterion. Returns the number of failed criteria.
inline int run_suite(const Options& o, const std::filesystem::path& dir, const std::set<int>& only,
                     std::ostream& log) {
  std::vector<Outcome> res;
  auto report = [&](const Outcome& oc) {
    log << (oc.passed ? "[PASS] " : "[FAIL] ") << "criterion " << oc.id << " (" << oc.name
        << "): " << oc.detail << " [" << fmt_num(std::round(oc.seconds * 10) / 10) << "s]"
        << std::endl;
  };
  for (auto& [id, f] : criteria_1_to_12()) {
    if (!only.empty() && !only.count(id)) continue;
    Outcome oc = run_timed(f, o);
    write_outcome(oc, dir);
    report(oc);
    res.push_back(std::move(oc));
  }
  if (only.empty() || only.count(13)) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome oc = criterion_determinism(o, dir / "determinism");
    oc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outcome(oc, dir);
    report(oc);
    res.push_back(std::move(oc));
  }
  json summary = json::array(), timing = json::object();
  int failed = 0;
  for (const auto& oc : res) {
    summary.push_back({{"id", oc.id}, {"name", oc.name}, {"passed", oc.passed}});
    timing[stem(oc.id)] = oc.seconds;
    failed += !oc.passed;
  }
  json top;
  top["schema_version"] = kReportSchemaVersion;
  top["seed"] = o.seed;
  top["quick"] = o.quick;
  top["criteria"] = summary;
  top["failed"] = failed;
  write_text(dir / "acceptance_summary.json", top.dump(2) + "\n");
  write_text(dir / "acceptance_timing.json", timing.dump(2) + "\n");
  log << (failed ? "FAILED " : "PASSED ") << (res.size() - failed) << "/" << res.size()
      << " criteria" << std::endl;
  return failed;
}

}  // namespace mmest::acceptance
