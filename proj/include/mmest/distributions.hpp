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

// YES/NO graph distributions built from randomly placed gadget copies plus a
// clique, and a likelihood-ratio classifier fed with IID edge streams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mmest/construction.hpp"
#include "mmest/graph.hpp"
#include "mmest/prf.hpp"
#include "mmest/stats.hpp"
#include "mmest/stream.hpp"
#include "mmest/subgraph.hpp"

namespace mmest {

// Automorphisms of a small pattern graph, by brute force over vertex orders.
inline std::uint64_t automorphism_count(const Graph& p) {
  if (p.n() > 9) throw std::invalid_argument("automorphism_count: pattern too large");
  std::vector<Vertex> perm(p.n());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (const Edge& e : p.edges())
      if (!p.has_edge(perm[e.u], perm[e.v])) {
        ok = false;
        break;
      }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Largest j <= limit such that G and H have equal counts for every pattern
// with at most j edges.
inline std::size_t agreement_order(const Graph& G, const Graph& H, std::size_t limit = 4) {
  std::size_t a = 0;
  for (std::size_t j = 1; j <= limit; ++j) {
    if (!verify_indistinguishable(G, H, j).all_equal) break;
    a = j;
  }
  return a;
}

class DistributionPair {
 public:
  // r gadget copies (r = n / (2q) when 0), a w-clique, isolated rest.
  DistributionPair(Graph yes_gadget, Graph no_gadget, std::size_t n, std::size_t w,
                   std::size_t r = 0)
      : G_(std::move(yes_gadget)), H_(std::move(no_gadget)), n_(n), w_(w) {
    if (G_.m() != H_.m()) throw std::invalid_argument("gadgets must have equal edge counts");
    q_ = std::max(G_.n(), H_.n());
    r_ = r ? r : n / (2 * q_);
    if (r_ == 0 || r_ * q_ + w_ > n_) throw std::invalid_argument("distribution layout infeasible");
    m_ = r_ * G_.m() + w_ * (w_ - (w_ > 0)) / 2;
    agree_ = agreement_order(G_, H_);
    yes_types_ = component_terms(G_);
    no_types_ = component_terms(H_);
  }

  const Graph& yes_gadget() const { return G_; }
  const Graph& no_gadget() const { return H_; }
  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  std::size_t q() const { return q_; }
  std::size_t w() const { return w_; }
  std::size_t m() const { return m_; }
  std::size_t agreement() const { return agree_; }

  // Randomly labelled sample; edge order is shuffled too.
  Graph sample(bool yes, std::uint64_t seed) const {
    PrfStream rng(seed, Domain::kGraph);
    std::vector<Vertex> perm(n_);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    for (std::size_t i = n_; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    const Graph& gad = yes ? G_ : H_;
    std::vector<Edge> es;
    es.reserve(m_);
    for (std::size_t i = 0; i < r_; ++i)
      for (const Edge& e : gad.edges())
        es.push_back({perm[i * q_ + e.u], perm[i * q_ + e.v]});
    const std::size_t base = r_ * q_;
    for (std::size_t a = 0; a < w_; ++a)
      for (std::size_t b = a + 1; b < w_; ++b) es.push_back({perm[base + a], perm[base + b]});
    for (std::size_t i = es.size(); i > 1; --i) std::swap(es[i - 1], es[rng.below(i)]);
    return Graph(n_, std::move(es));
  }

  // Largest stream length L with r * P[Bin(L, m_g/m) > agreement] <= budget.
  std::uint64_t sub_collision_length(double budget = 0.1) const {
    const double p = static_cast<double>(G_.m()) / static_cast<double>(m_);
    auto risk = [&](std::uint64_t L) {
      double below = 0.0;
      for (std::size_t i = 0; i <= agree_ && i <= L; ++i)
        below += std::exp(std::lgamma(L + 1.0) - std::lgamma(i + 1.0) - std::lgamma(L - i + 1.0) +
                          i * std::log(p) + (L - i) * std::log1p(-p));
      return static_cast<double>(r_) * std::max(0.0, 1.0 - below);
    };
    std::uint64_t lo = 0, hi = 1;
    while (risk(hi) <= budget) hi *= 2;
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (risk(mid) <= budget ? lo : hi) = mid;
    }
    return lo;
  }

  // m (ln m + 5): every edge is seen with probability about 1 - e^{-5}.
  std::uint64_t full_information_length() const {
    const double m = static_cast<double>(m_);
    return static_cast<std::uint64_t>(std::ceil(m * (std::log(m) + 5.0)));
  }

  // Log-likelihood ratio (YES over NO) of the component-type counts of the
  // distinct edges seen in a stream of length L. Components are modelled as
  // independent Poisson counts, each edge observed with probability
  // 1 - (1 - 1/m)^L.
  double log_likelihood_ratio(const std::vector<Edge>& seen, std::uint64_t L) const {
    const double q = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(m_), static_cast<double>(L));
    std::map<CanonicalForm, std::uint64_t> observed;
    for (auto& comp : components(seen))
      if (comp.size() <= kMaxPatternEdges) ++observed[canonical_form(comp)];
    std::map<CanonicalForm, char> forms;
    for (auto& [f, t] : yes_types_) forms[f] = 1;
    for (auto& [f, t] : no_types_) forms[f] = 1;
    for (auto& [f, k] : observed) forms[f] = 1;
    double llr = 0.0;
    for (auto& [f, unused] : forms) {
      const double cl = clique_rate(f, q);
      const double ly = r_ * rate(yes_types_, f, q) + cl;
      const double ln = r_ * rate(no_types_, f, q) + cl;
      auto it = observed.find(f);
      const double k = it == observed.end() ? 0.0 : static_cast<double>(it->second);
      if (k > 0) llr += k * (std::log(std::max(ly, 1e-300)) - std::log(std::max(ln, 1e-300)));
      llr -= ly - ln;
    }
    return llr;
  }

 private:
  struct Term {
    std::size_t edges;
    std::size_t boundary;
    double count;
  };
  using TermTable = std::map<CanonicalForm, std::vector<Term>>;

  static std::vector<std::vector<Edge>> components(const std::vector<Edge>& es) {
    std::map<Vertex, Vertex> parent;
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Edge& e : es) {
      parent.try_emplace(e.u, e.u);
      parent.try_emplace(e.v, e.v);
      parent[find(e.u)] = find(e.v);
    }
    std::map<Vertex, std::vector<Edge>> by_root;
    for (const Edge& e : es) by_root[find(e.u)].push_back(e);
    std::vector<std::vector<Edge>> out;
    for (auto& [root, c] : by_root) out.push_back(std::move(c));
    return out;
  }

  // Every connected edge subset of the gadget with <= 5 edges, with the
  // number of gadget edges outside it that touch its vertices.
  static TermTable component_terms(const Graph& g) {
    std::map<std::pair<CanonicalForm, std::pair<std::size_t, std::size_t>>, double> agg;
    const std::size_t m = g.m();
    for (std::size_t j = 1; j <= std::min(m, kMaxPatternEdges); ++j) {
      std::vector<std::size_t> idx(j);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        std::vector<Edge> es;
        std::vector<char> in(m, 0), touch(g.n(), 0);
        for (auto i : idx) {
          es.push_back(g.edge(EdgeId(i)));
          in[i] = 1;
          touch[g.edge(EdgeId(i)).u] = touch[g.edge(EdgeId(i)).v] = 1;
        }
        if (components(es).size() == 1) {
          std::size_t bd = 0;
          for (std::size_t e = 0; e < m; ++e)
            if (!in[e] && (touch[g.edge(EdgeId(e)).u] || touch[g.edge(EdgeId(e)).v])) ++bd;
          agg[{canonical_form(es), {j, bd}}] += 1.0;
        }
        std::size_t p = j;
        while (p > 0 && idx[p - 1] == m - j + p - 1) --p;
        if (p == 0) break;
        ++idx[p - 1];
        for (std::size_t t = p; t < j; ++t) idx[t] = idx[t - 1] + 1;
      }
    }
    TermTable out;
    for (auto& [key, cnt] : agg) out[key.first].push_back({key.second.first, key.second.second, cnt});
    return out;
  }

  static double rate(const TermTable& t, const CanonicalForm& f, double q) {
    auto it = t.find(f);
    if (it == t.end()) return 0.0;
    double s = 0.0;
    for (const Term& x : it->second)
      s += x.count * std::pow(q, static_cast<double>(x.edges)) *
           std::pow(1.0 - q, static_cast<double>(x.boundary));
    return s;
  }

  // Expected isolated copies of the (connected) form inside the w-clique.
  double clique_rate(const CanonicalForm& f, double q) const {
    auto it = clique_cache_.find(f);
    if (it == clique_cache_.end()) {
      it = clique_cache_.emplace(f, clique_shape(f)).first;
    }
    const auto& [v, e, aut] = it->second;
    if (v > w_ || v == 0) return 0.0;
    double falling = 1.0;
    for (std::size_t i = 0; i < v; ++i) falling *= static_cast<double>(w_ - i);
    const double bd = static_cast<double>(v * (v - 1) / 2 - e + v * (w_ - v));
    return falling / aut * std::pow(q, static_cast<double>(e)) * std::pow(1.0 - q, bd);
  }

  struct Shape {
    std::size_t v = 0, e = 0;
    double aut = 1.0;
  };

  Shape clique_shape(const CanonicalForm& f) const {
    // Recover a representative from the pattern catalog.
    for (std::size_t j = 1; j <= kMaxPatternEdges; ++j) {
      if (catalog_.size() < j) catalog_.push_back(pattern_catalog_exact(j));
      for (const Graph& p : catalog_[j - 1])
        if (canonical_form(p) == f)
          return {p.n(), p.m(), static_cast<double>(automorphism_count(p))};
    }
    return {};
  }

  static std::vector<Graph> pattern_catalog_exact(std::size_t j) {
    std::vector<Graph> out;
    for (Graph& p : pattern_catalog(j))
      if (p.m() == j) out.push_back(std::move(p));
    return out;
  }

  Graph G_, H_;
  std::size_t n_, w_, q_ = 0, r_ = 0, m_ = 0, agree_ = 0;
  TermTable yes_types_, no_types_;
  mutable std::map<CanonicalForm, Shape> clique_cache_;
  mutable std::vector<std::vector<Graph>> catalog_;
};

// Gadgets from the level-k construction with parameter c.
inline DistributionPair build_distributions(std::size_t n, std::size_t c, int k, std::size_t w,
                                            std::size_t r = 0) {
  PairBuild pb = build_pair(c, k);
  return DistributionPair(std::move(pb.G), std::move(pb.H), n, w, r);
}

struct ClassifierReport {
  std::uint64_t stream_len = 0;
  std::uint64_t trials = 0;
  std::uint64_t correct = 0;
  double accuracy = 0.0;
  double se = 0.0;
  Interval ci;
};

// One trial: fair coin for YES/NO, sample, stream, classify.
inline bool classify_once(const DistributionPair& dp, std::uint64_t stream_len,
                          std::uint64_t seed, std::uint64_t trial) {
  const std::uint64_t ts = derive_seed(seed, trial, 0x1b);
  const bool yes = prf(ts, Domain::kCoin, 0) & 1;
  const Graph g = dp.sample(yes, prf(ts, Domain::kGraph, 1));
  std::vector<Edge> seen;
  if (stream_len > 0) {
    EdgeStream s(g, StreamMode::kIid, prf(ts, Domain::kStream, 2));
    std::vector<char> got(g.m(), 0);
    for (std::uint64_t i = 0; i < stream_len; ++i) {
      const StreamedEdge e = s.next();
      if (!got[e.id]) {
        got[e.id] = 1;
        seen.push_back({e.u, e.v});
      }
    }
  }
  const double llr = dp.log_likelihood_ratio(seen, stream_len);
  bool guess;
  if (llr > 1e-9) guess = true;
  else if (llr < -1e-9) guess = false;
  else guess = prf(ts, Domain::kCoin, 3) & 1;
  return guess == yes;
}

inline ClassifierReport distinguishability_experiment(const DistributionPair& dp,
                                                      std::uint64_t stream_len,
                                                      std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("distinguishability: trials must be positive");
  ClassifierReport r;
  r.stream_len = stream_len;
  r.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) r.correct += classify_once(dp, stream_len, seed, t);
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(trials);
  r.se = proportion_se(r.correct, trials);
  r.ci = wilson(r.correct, trials);
  return r;
}

}  // namespace mmest
