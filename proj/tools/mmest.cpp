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


// mmest command-line entry point.
//
//   mmest [--seed S] [--threads T] [--out-dir D] [--quick] [--config F.toml] <command> ...
//
// Commands: peel, estimate, lca, forge {build-pair, verify, lb-experiment},
// greedy, coupling, accept. Each writes <command>.csv, <command>.json and
// <command>.timing.json under the output directory and prints the JSON
// summary. Exit status: 0 ok, 1 failed checks or runtime error, 2 usage.

#include <chrono>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmest/acceptance.hpp"
#include "mmest/construction.hpp"
#include "mmest/distributions.hpp"
#include "mmest/divergence.hpp"
#include "mmest/estimator.hpp"
#include "mmest/graph.hpp"
#include "mmest/greedy_lab.hpp"
#include "mmest/groups.hpp"
#include "mmest/harness.hpp"
#include "mmest/kdegree.hpp"
#include "mmest/lca.hpp"
#include "mmest/matching.hpp"
#include "mmest/peeling.hpp"
#include "mmest/stats.hpp"
#include "mmest/subgraph.hpp"

using namespace mmest;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Global {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = "mmest_out";
  bool quick = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

// A path to an edge-list file, or gen:<kind>:<args> with kinds
// gnm:n:m[:seed], star:k, complete:n, path:n, cycle:n, matching:k,
// grid:r:c, circulant:n:half, copies:<k>:complete:<n>.
Graph load_or_generate(const std::string& spec) {
  if (spec.rfind("gen:", 0) != 0) return load_graph(spec);
  const auto p = split(spec.substr(4), ':');
  auto num = [&](std::size_t i) -> std::size_t {
    if (i >= p.size()) throw UsageError("graph spec '" + spec + "' is missing arguments");
    return std::stoull(p[i]);
  };
  const std::string& kind = p.empty() ? spec : p[0];
  if (kind == "gnm") return random_gnm(num(1), num(2), p.size() > 3 ? num(3) : 1);
  if (kind == "star") return star_graph(num(1));
  if (kind == "complete") return complete_graph(num(1));
  if (kind == "path") return path_graph(num(1));
  if (kind == "cycle") return cycle_graph(num(1));
  if (kind == "matching") return matching_graph(num(1));
  if (kind == "grid") return grid_graph(num(1), num(2));
  if (kind == "circulant") return circulant_graph(num(1), num(2));
  if (kind == "copies" && p.size() == 4 && p[2] == "complete")
    return copies(complete_graph(num(3)), num(1));
  throw UsageError("unknown graph generator '" + spec + "'");
}

std::string b(bool x) { return x ? "1" : "0"; }
std::string u(std::uint64_t x) { return std::to_string(x); }

json graph_info(const Graph& g) {
  return {{"n", g.n()}, {"m", g.m()}, {"max_degree", g.max_degree()}};
}

std::optional<std::size_t> small_mm(const Graph& g) {
  if (g.m() > kExactMmEdgeLimit) return std::nullopt;
  return exact_mm(g);
}

// ---- peel ------------------------------------------------------------------

struct PeelArgs {
  std::string graph;
  double c = 2.0, delta = 0.5;
  int rounds = 0;
};

RunReport cmd_peel(const Global&, const PeelArgs& a) {
  const Graph g = load_or_generate(a.graph);
  PeelingConfig cfg{a.c, a.delta, std::nullopt};
  if (a.rounds > 0) cfg.J = a.rounds - 1;
  const PeelingResult r = alg_global(g, cfg);
  RunReport rep;
  rep.command = "peel";
  rep.config = {{"graph", a.graph}, {"c", a.c}, {"delta", a.delta}, {"J", r.J}};
  rep.rows = CsvTable({"edge", "u", "v", "weight"});
  for (std::size_t e = 0; e < g.m(); ++e)
    rep.rows.add({u(e), u(g.edge(EdgeId(e)).u), u(g.edge(EdgeId(e)).v),
                  fmt_num(r.matching.weights[e])});
  double maxload = 0.0;
  for (double x : vertex_loads(g, r.matching)) maxload = std::max(maxload, x);
  const double cap = peeling_load_cap(cfg);
  rep.summary = {{"graph", graph_info(g)},
                 {"cover_size", r.cover.members.size()},
                 {"sum_M", r.sum_weight},
                 {"delta_cover", a.delta * double(r.cover.members.size())},
                 {"max_load", maxload},
                 {"load_cap", cap},
                 {"per_round_peels", r.per_round_peels}};
  if (auto mm = small_mm(g)) rep.summary["mm_exact"] = *mm;
  if (!is_vertex_cover(g, r.cover)) rep.failures.push_back("cover does not cover every edge");
  if (maxload > cap + 1e-9) rep.failures.push_back("vertex load above cap");
  return rep;
}

// ---- estimate --------------------------------------------------------------

struct EstimateArgs {
  std::string graph;
  std::string mode = "iid";
  double c = 2.0, delta = 0.5, beta = 4.0;
  std::uint64_t budget = 0, d = 0, trials = 21;
};

RunReport cmd_estimate(const Global& gl, const EstimateArgs& a) {
  const Graph g = load_or_generate(a.graph);
  if (a.mode == "perm" && a.budget) throw UsageError("--budget applies to --mode iid only");
  EstimatorConfig cfg = make_estimator_config(
      g, a.c, a.delta, a.d ? std::optional<std::uint64_t>(a.d) : std::nullopt,
      a.budget ? std::optional<std::uint64_t>(a.budget) : std::nullopt);
  cfg.validate();
  const auto mm = small_mm(g);
  struct Row {
    double est;
    std::uint64_t used;
    bool completed;
  };
  auto rows = parallel_map(a.trials, gl.threads, [&](std::uint64_t t) {
    const std::uint64_t s = derive_seed(gl.seed, t);
    if (a.mode == "iid") {
      EdgeStream st(g, StreamMode::kIid, s);
      const IidResult r = alg_iid(st, cfg);
      return Row{r.estimate, r.samples_used, r.completed};
    }
    EdgeStream st(g, StreamMode::kPermutation, s);
    const PermutationResult r = permutation_peeling(st, cfg, a.beta);
    return Row{r.run.estimate, r.run.samples_used, r.run.completed};
  });
  RunReport rep;
  rep.command = "estimate";
  rep.config = {{"graph", a.graph}, {"mode", a.mode},       {"c", a.c},
                {"delta", a.delta}, {"d", cfg.d},           {"budget", cfg.sample_budget},
                {"trials", a.trials}, {"seed", gl.seed}};
  rep.rows = CsvTable({"trial", "estimate", "samples_used", "completed", "mm_exact"});
  std::vector<double> est;
  for (std::uint64_t t = 0; t < a.trials; ++t) {
    rep.rows.add({u(t), fmt_num(rows[t].est), u(rows[t].used), b(rows[t].completed),
                  mm ? u(*mm) : ""});
    est.push_back(rows[t].est);
  }
  rep.summary = {{"graph", graph_info(g)},
                 {"median", median(est)},
                 {"mean", mean(est)},
                 {"q25", quantile(est, 0.25)},
                 {"q75", quantile(est, 0.75)}};
  if (mm) {
    rep.summary["mm_exact"] = *mm;
    rep.summary["median_over_mm"] = median(est) / double(*mm);
  }
  return rep;
}

// ---- lca -------------------------------------------------------------------

struct LcaArgs {
  std::string graph;
  double c = 2.0, delta = 0.5, lambda = 0.0, K = 8.0;
  std::uint64_t seeds = 10;
  std::string query = "all-edges";
};

// Single query: edge:U,V or vertex:V, answered under the master seed.
RunReport cmd_lca_query(const Global& gl, const LcaArgs& a, const Graph& g) {
  OracleConfig cfg = make_oracle_config(
      g, gl.seed, a.c, a.delta, a.lambda > 0 ? std::optional<double>(a.lambda) : std::nullopt);
  cfg.query_budget_factor = a.K;
  LcaOracle orc(g, cfg);
  QueryLedger led;
  bool answer = false;
  const auto colon = a.query.find(':');
  const std::string kind = a.query.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : a.query.substr(colon + 1);
  if (kind == "edge") {
    const auto uv = split(arg, ',');
    if (uv.size() != 2) throw UsageError("--query edge:U,V");
    const Vertex x = Vertex(std::stoul(uv[0])), y = Vertex(std::stoul(uv[1]));
    if (x >= g.n() || y >= g.n() || !g.has_edge(x, y)) throw UsageError("no edge " + arg);
    EdgeId id = 0;
    for (EdgeId e : g.incident(x))
      if (g.other(e, x) == y) id = e;
    answer = orc.oracle_edge(id, led);
  } else if (kind == "vertex") {
    const auto v = std::stoul(arg);
    if (v >= g.n()) throw UsageError("vertex out of range");
    answer = orc.oracle_vertex(Vertex(v), led);
  } else {
    throw UsageError("--query must be edge:U,V, vertex:V or all-edges");
  }
  RunReport rep;
  rep.command = "lca";
  rep.config = {{"graph", a.graph}, {"query", a.query}, {"lambda", cfg.lambda}, {"seed", gl.seed}};
  rep.rows = CsvTable({"query", "answer", "probes"});
  rep.rows.add({a.query, b(answer), u(led.probes)});
  rep.summary = {{"answer", answer}, {"probes", led.probes},
                 {"over_soft_budget", led.over_soft_budget}};
  return rep;
}

RunReport cmd_lca(const Global& gl, const LcaArgs& a) {
  const Graph g = load_or_generate(a.graph);
  if (a.query != "all-edges") return cmd_lca_query(gl, a, g);
  struct Row {
    std::size_t size;
    bool valid;
    std::uint64_t max_probes, over;
  };
  OracleConfig base = make_oracle_config(
      g, 0, a.c, a.delta, a.lambda > 0 ? std::optional<double>(a.lambda) : std::nullopt);
  base.query_budget_factor = a.K;
  base.validate();
  auto rows = parallel_map(a.seeds, gl.threads, [&](std::uint64_t s) {
    OracleConfig cfg = base;
    cfg.master_seed = derive_seed(gl.seed, s);
    LcaOracle orc(g, cfg);
    const auto sw = orc.sweep_all_edges();
    std::vector<EdgeId> M;
    Row r{0, true, 0, 0};
    for (std::size_t e = 0; e < g.m(); ++e) {
      if (sw.in_matching[e]) M.push_back(EdgeId(e));
      r.max_probes = std::max(r.max_probes, sw.query_probes[e]);
      r.over += double(sw.query_probes[e]) > orc.soft_budget();
    }
    r.size = M.size();
    r.valid = is_matching(g, M);
    return r;
  });
  RunReport rep;
  rep.command = "lca";
  rep.config = {{"graph", a.graph}, {"c", a.c},         {"delta", a.delta},
                {"lambda", base.lambda}, {"K", a.K}, {"seeds", a.seeds}, {"seed", gl.seed}};
  rep.rows = CsvTable({"seed_index", "matching_size", "valid", "max_query_probes",
                       "queries_over_soft_budget"});
  std::vector<double> sizes;
  for (std::uint64_t s = 0; s < a.seeds; ++s) {
    rep.rows.add({u(s), u(rows[s].size), b(rows[s].valid), u(rows[s].max_probes), u(rows[s].over)});
    sizes.push_back(double(rows[s].size));
    if (!rows[s].valid) rep.failures.push_back("seed " + u(s) + ": oracle edges do not form a matching");
  }
  rep.summary = {{"graph", graph_info(g)}, {"mean_size", mean(sizes)}};
  if (auto mm = small_mm(g)) rep.summary["mm_exact"] = *mm;
  return rep;
}

// ---- forge -----------------------------------------------------------------

struct ForgeArgs {
  std::size_t c = 4, n = 900, w = 30;
  int k = 2;
  bool lift = false;
  std::size_t girth = 0;
  std::string out = "pair";
  std::string g_path, h_path;
  std::uint64_t stream_len = 0, trials = 400;
};

RunReport cmd_build_pair(const Global& gl, const ForgeArgs& a) {
  if (a.girth && !a.lift) throw UsageError("--girth requires --lift");
  const PairBuild pb = build_pair(a.c, a.k);
  RunReport rep;
  rep.command = "forge-build-pair";
  rep.config = {{"c", a.c}, {"k", a.k}, {"lift", a.lift}, {"girth", a.girth}, {"out", a.out}};
  rep.rows = CsvTable({"level", "N_h", "N_l", "d_h", "d_l"});
  for (std::size_t j = 0; j < pb.trace_g.size(); ++j) {
    const auto& t = pb.trace_g[j];
    rep.rows.add({u(j + 1), u(t.N_h), u(t.N_l), u(t.d_h), u(t.d_l)});
  }
  Graph G = pb.G, H = pb.H;
  if (a.lift) {
    const std::size_t want = a.girth ? a.girth : std::size_t(2 * a.k + 2);
    const GeneratorSearch gs = find_high_girth_generators(std::max(G.m(), H.m()), want, 200, gl.seed);
    if (!gs.found) throw std::runtime_error("generator search failed: " + gs.reason);
    std::vector<std::uint32_t> lab(std::max(G.m(), H.m()));
    for (std::size_t i = 0; i < lab.size(); ++i) lab[i] = std::uint32_t(i);
    G = lift(pb.G, *gs.found, {lab.begin(), lab.begin() + G.m()}).lifted;
    H = lift(pb.H, *gs.found, {lab.begin(), lab.begin() + H.m()}).lifted;
    rep.summary["group"] = gs.found->name;
    rep.summary["group_girth"] = gs.girth;
  }
  const std::filesystem::path dir(gl.out_dir);
  std::filesystem::create_directories(dir);
  save_graph((dir / (a.out + "_G.el")).string(), G);
  save_graph((dir / (a.out + "_H.el")).string(), H);
  rep.summary["G"] = graph_info(G);
  rep.summary["H"] = graph_info(H);
  rep.summary["witness_matching_size"] = pb.witness_matching.size();
  rep.summary["witness_cover_size"] = pb.witness_cover.members.size();
  if (!is_matching(pb.G, pb.witness_matching)) rep.failures.push_back("witness matching invalid");
  if (!is_vertex_cover(pb.H, pb.witness_cover)) rep.failures.push_back("witness cover invalid");
  return rep;
}

RunReport cmd_verify(const Global&, const ForgeArgs& a) {
  if (a.g_path.empty() || a.h_path.empty()) throw UsageError("verify needs --g and --h");
  const Graph G = load_or_generate(a.g_path), H = load_or_generate(a.h_path);
  RunReport rep;
  rep.command = "forge-verify";
  rep.config = {{"g", a.g_path}, {"h", a.h_path}, {"k", a.k}};
  LevelDegreeInterner in;
  const BijectionResult bij = find_degree_bijection(G, H, a.k, in);
  const auto ind = verify_indistinguishable(G, H, std::size_t(a.k));
  rep.rows = CsvTable({"pattern", "edges", "count_g", "count_h", "equal"});
  for (const auto& r : ind.rows)
    rep.rows.add({r.form, u(r.edges), u(r.count_g), u(r.count_h), b(r.equal())});
  rep.summary = {{"bijection", bij.ok}, {"counts_equal", ind.all_equal}};
  if (!bij.ok) rep.summary["bijection_mismatch"] = bij.mismatch;
  if (ind.first_difference) rep.summary["first_difference"] = ind.first_difference->form;
  return rep;
}

RunReport cmd_lb(const Global& gl, const ForgeArgs& a) {
  const DistributionPair dp = build_distributions(a.n, a.c, a.k, a.w);
  const std::uint64_t L = a.stream_len;
  auto hits = parallel_map(a.trials, gl.threads,
                           [&](std::uint64_t t) { return classify_once(dp, L, gl.seed, t); });
  RunReport rep;
  rep.command = "forge-lb-experiment";
  rep.config = {{"n", a.n}, {"c", a.c}, {"k", a.k}, {"w", a.w}, {"stream_len", L},
                {"trials", a.trials}, {"seed", gl.seed}};
  rep.rows = CsvTable({"trial", "correct"});
  std::uint64_t correct = 0;
  for (std::uint64_t t = 0; t < a.trials; ++t) {
    rep.rows.add({u(t), b(hits[t])});
    correct += hits[t];
  }
  const Interval ci = wilson(correct, a.trials);
  rep.summary = {{"m", dp.m()},
                 {"r", dp.r()},
                 {"agreement_order", dp.agreement()},
                 {"sub_collision_length", dp.sub_collision_length()},
                 {"full_information_length", dp.full_information_length()},
                 {"accuracy", double(correct) / double(a.trials)},
                 {"ci", {ci.lo, ci.hi}}};
  return rep;
}

// ---- greedy ----------------------------------------------------------------

struct GreedyArgs {
  std::string kind = "hd", measure = "mean";
  int d = 5, lmax = 64, l = 12;
  double eps = 0.125;
  std::uint64_t trials = 5000;
};

RunReport cmd_greedy(const Global& gl, const GreedyArgs& a) {
  if (a.kind != "hd" && a.kind != "hde") throw UsageError("--kind must be hd or hde");
  const TreeKind kind = a.kind == "hd" ? TreeKind::kHd : TreeKind::kHde;
  RunReport rep;
  rep.command = "greedy";
  rep.config = {{"kind", a.kind}, {"d", a.d},           {"eps", a.eps},     {"lmax", a.lmax},
                {"trials", a.trials}, {"measure", a.measure}, {"seed", gl.seed}};
  auto run = [&](int d, std::uint64_t salt) {
    const TreeSpec spec{kind, d, a.eps, a.lmax};
    return parallel_map(a.trials, gl.threads, [&](std::uint64_t t) {
      return simulate_one(spec, derive_seed(gl.seed, salt), t);
    });
  };
  if (a.measure == "scaling") {
    rep.rows = CsvTable({"d", "mean_T", "se"});
    std::vector<double> lx, ly;
    for (int d : {16, 32, 64, 128}) {
      std::vector<double> t;
      for (auto& x : run(d, std::uint64_t(d))) t.push_back(double(x.T));
      rep.rows.add({std::to_string(d), fmt_num(mean(t)), fmt_num(std_error(t))});
      lx.push_back(std::log(double(d)));
      ly.push_back(std::log(mean(t)));
    }
    rep.summary = {{"exponent", ls_slope(lx, ly)}};
    return rep;
  }
  const auto st = run(a.d, 0);
  rep.rows = CsvTable({"trial", "T", "D", "truncated"});
  std::vector<double> t, t2;
  std::uint64_t tail = 0, trunc = 0;
  for (std::uint64_t i = 0; i < st.size(); ++i) {
    rep.rows.add({u(i), u(st[i].T), std::to_string(st[i].D), b(st[i].truncated)});
    t.push_back(double(st[i].T));
    t2.push_back(double(st[i].T) * double(st[i].T));
    tail += st[i].D >= a.l;
    trunc += st[i].truncated;
  }
  rep.summary = {{"mean_T", mean(t)}, {"se_T", std_error(t)}, {"truncated", trunc}};
  if (a.measure == "mean") {
    if (kind == TreeKind::kHd) rep.summary["closed_form_mean"] = expected_root_t(a.d);
    else rep.summary["lower_bound"] = hde_mean_lower_bound(a.d, a.eps);
  } else if (a.measure == "depth-tail") {
    rep.summary["l"] = a.l;
    rep.summary["tail"] = double(tail) / double(st.size());
    rep.summary["bound"] = depth_tail_bound(a.d, a.l);
  } else if (a.measure == "second-moment") {
    rep.summary["second_moment"] = mean(t2);
    rep.summary["se"] = std_error(t2);
    rep.summary["bound"] = kind == TreeKind::kHd ? second_moment_bound_hd(a.d)
                                                 : second_moment_bound_hde(a.d, a.eps);
  } else {
    throw UsageError("--measure must be mean, depth-tail, second-moment or scaling");
  }
  return rep;
}

// ---- coupling --------------------------------------------------------------

struct CouplingArgs {
  std::string graph;
  std::uint32_t vertex = 0;
  int level = 1;
  std::uint64_t t = 0, trials = 10000;
  bool exact = false, control = false;
};

RunReport cmd_coupling(const Global& gl, const CouplingArgs& a) {
  if (a.exact && a.control) throw UsageError("--exact and --control are exclusive");
  if (a.exact && a.level != 1) throw UsageError("--exact supports --level 1 only");
  const Graph g = load_or_generate(a.graph);
  const EstimatorConfig cfg = make_estimator_config(g);
  const auto prefix = a.control ? std::vector<EdgeId>{} : random_prefix(g, a.t, gl.seed);
  CouplingReport r;
  if (a.exact) r = exact_coupling(g, a.vertex, prefix, cfg);
  else
    r = stream_coupling_experiment(g, a.vertex, a.level, prefix, a.trials, gl.seed, cfg,
                                   a.control ? CouplingArm::kIidControl : CouplingArm::kPermutation);
  RunReport rep;
  rep.command = "coupling";
  rep.config = {{"graph", a.graph}, {"vertex", a.vertex}, {"level", a.level}, {"t", a.t},
                {"trials", a.trials}, {"exact", a.exact}, {"control", a.control},
                {"seed", gl.seed}};
  rep.rows = CsvTable({"arm", "pass_probability"});
  rep.rows.add({"iid", fmt_num(r.p_iid)});
  rep.rows.add({a.control ? "iid_control" : "permutation_prefix", fmt_num(r.p_other)});
  rep.summary = {{"tvd", r.tvd}, {"ci", {r.ci.lo, r.ci.hi}}, {"noise_floor", r.noise_floor},
                 {"exact", r.exact}};
  return rep;
}

int emit(const Global& gl, const RunReport& rep, const std::string& stem) {
  write_report(rep, gl.out_dir, stem);
  std::cout << rep.to_json().dump(2) << std::endl;
  for (const auto& f : rep.failures) std::cerr << "check failed: " << f << "\n";
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matching-size estimation experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "TOML file mirroring the flags; flags override it");
  Global gl;
  app.add_option("--seed", gl.seed, "master seed");
  app.add_option("--threads", gl.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--out-dir", gl.out_dir, "output directory");
  app.add_flag("--quick", gl.quick, "reduced trial counts where applicable");

  PeelArgs pa;
  auto* peel = app.add_subcommand("peel", "offline peeling: fractional matching and cover");
  peel->add_option("--graph", pa.graph, "edge-list file or gen:<spec>")->required();
  peel->add_option("--c", pa.c)->check(CLI::PositiveNumber);
  peel->add_option("--delta", pa.delta)->check(CLI::PositiveNumber);
  peel->add_option("--rounds", pa.rounds, "number of rounds (default floor(log_c d) + 1)")
      ->check(CLI::Range(1, 64));

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "streaming matching-size estimate");
  est->add_option("--graph", ea.graph)->required();
  est->add_option("--mode", ea.mode)->check(CLI::IsMember({"iid", "perm"}));
  est->add_option("--c", ea.c);
  est->add_option("--delta", ea.delta);
  est->add_option("--budget", ea.budget, "sample budget for iid mode (default m)");
  est->add_option("--d", ea.d, "degree bound (default n)");
  est->add_option("--beta", ea.beta, "permutation budget factor");
  est->add_option("--trials", ea.trials)->check(CLI::PositiveNumber);

  LcaArgs la;
  auto* lca = app.add_subcommand("lca", "local matching oracle over all edges");
  lca->add_option("--graph", la.graph)->required();
  lca->add_option("--c", la.c);
  lca->add_option("--delta", la.delta);
  lca->add_option("--lambda", la.lambda, "candidate scale (default 100 c^2)");
  lca->add_option("--K", la.K, "soft budget factor");
  lca->add_option("--seeds", la.seeds, "master seeds for all-edges sweeps")
      ->check(CLI::PositiveNumber);
  lca->add_option("--query", la.query, "edge:U,V | vertex:V | all-edges");

  ForgeArgs fa;
  auto* forge = app.add_subcommand("forge", "hard instances");
  forge->require_subcommand(1);
  auto* bp = forge->add_subcommand("build-pair", "level-k pair, optionally lifted");
  bp->add_option("--c", fa.c)->check(CLI::Range(2, 64));
  bp->add_option("--k", fa.k)->check(CLI::Range(1, 8));
  bp->add_flag("--lift", fa.lift);
  bp->add_option("--girth", fa.girth);
  bp->add_option("--out", fa.out, "file prefix inside --out-dir");
  auto* ver = forge->add_subcommand("verify", "level-degree bijection and pattern counts");
  ver->set_help_flag("--help", "print help");
  ver->add_option("--g", fa.g_path)->required();
  ver->add_option("--h", fa.h_path)->required();
  ver->add_option("--k", fa.k)->check(CLI::Range(1, 4));
  auto* lb = forge->add_subcommand("lb-experiment", "YES/NO distinguishability");
  lb->add_option("--n", fa.n);
  lb->add_option("--c", fa.c);
  lb->add_option("--k", fa.k);
  lb->add_option("--w", fa.w);
  lb->add_option("--stream-len", fa.stream_len);
  lb->add_option("--trials", fa.trials)->check(CLI::PositiveNumber);

  GreedyArgs ga;
  auto* gr = app.add_subcommand("greedy", "greedy-membership exploration on lazy trees");
  gr->add_option("--kind", ga.kind)->check(CLI::IsMember({"hd", "hde"}));
  gr->add_option("--d", ga.d)->check(CLI::Range(2, 4096));
  gr->add_option("--eps", ga.eps)->check(CLI::Range(0.0, 1.0));
  gr->add_option("--lmax", ga.lmax)->check(CLI::Range(1, 1000));
  gr->add_option("--l", ga.l, "depth for --measure depth-tail");
  gr->add_option("--trials", ga.trials)->check(CLI::PositiveNumber);
  gr->add_option("--measure", ga.measure)
      ->check(CLI::IsMember({"mean", "depth-tail", "second-moment", "scaling"}));

  CouplingArgs ca;
  auto* cp = app.add_subcommand("coupling", "IID vs prefix-conditioned permutation streams");
  cp->add_option("--graph", ca.graph)->required();
  cp->add_option("--vertex", ca.vertex);
  cp->add_option("--level", ca.level)->check(CLI::Range(1, 64));
  cp->add_option("--t", ca.t, "prefix length");
  cp->add_option("--trials", ca.trials)->check(CLI::PositiveNumber);
  cp->add_flag("--exact", ca.exact, "enumerate streams (m <= 8, level 1)");
  cp->add_flag("--control", ca.control, "second IID arm instead of the permutation arm");

  std::set<int> only;
  std::optional<double> inject;
  auto* acc = app.add_subcommand("accept", "acceptance suite");
  acc->add_option("--only", only)->check(CLI::Range(1, 13));
  acc->add_option("--inject-delta", inject, "negative control");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto timed = [&](RunReport rep, const std::string& stem) {
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit(gl, rep, stem);
  };
  try {
    if (*peel) return timed(cmd_peel(gl, pa), "peel");
    if (*est) {
      if (gl.quick) ea.trials = std::min<std::uint64_t>(ea.trials, 5);
      return timed(cmd_estimate(gl, ea), "estimate");
    }
    if (*lca) return timed(cmd_lca(gl, la), "lca");
    if (*bp) return timed(cmd_build_pair(gl, fa), "forge_build_pair");
    if (*ver) return timed(cmd_verify(gl, fa), "forge_verify");
    if (*lb) return timed(cmd_lb(gl, fa), "forge_lb_experiment");
    if (*gr) {
      if (gl.quick) ga.trials = std::min<std::uint64_t>(ga.trials, 500);
      return timed(cmd_greedy(gl, ga), "greedy");
    }
    if (*cp) return timed(cmd_coupling(gl, ca), "coupling");
    if (*acc) {
      acceptance::Options o;
      o.seed = gl.seed;
      o.threads = gl.threads;
      o.quick = gl.quick;
      o.inject_delta = inject;
      return acceptance::run_suite(o, gl.out_dir, only, std::cout) ? 1 : 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
