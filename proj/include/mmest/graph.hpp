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

// Static simple undirected graph with a CSR incidence index.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mmest/prf.hpp"

namespace mmest {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

class Graph {
 public:
  Graph() = default;

  // Validates: endpoints < n, no self-loops, no duplicates (either order).
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ > 0xffffffffULL) throw GraphError("too many vertices");
    keys_.reserve(edges_.size() * 2);
    std::vector<std::uint32_t> deg(n_, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.u >= n_ || e.v >= n_) {
        throw GraphError("edge " + std::to_string(i) + ": vertex id >= n");
      }
      if (e.u == e.v) {
        throw GraphError("edge " + std::to_string(i) + ": self-loop at " +
                         std::to_string(e.u));
      }
      if (!keys_.insert(edge_key(e.u, e.v)).second) {
        throw GraphError("edge " + std::to_string(i) + ": duplicate edge " +
                         std::to_string(e.u) + " " + std::to_string(e.v));
      }
      ++deg[e.u];
      ++deg[e.v];
    }
    offset_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offset_[v + 1] = offset_[v] + deg[v];
    incident_.resize(offset_[n_]);
    std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      incident_[fill[edges_[i].u]++] = static_cast<EdgeId>(i);
      incident_[fill[edges_[i].v]++] = static_cast<EdgeId>(i);
    }
    for (std::uint32_t x : deg) max_degree_ = std::max<std::size_t>(max_degree_, x);
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::size_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }
  std::size_t max_degree() const { return max_degree_; }

  // Degree bound d used by the algorithms: true maximum unless declared.
  std::size_t degree_bound() const { return declared_d_.value_or(max_degree_); }
  void declare_degree_bound(std::size_t d) {
    if (d < max_degree_) throw GraphError("declared d below true max degree");
    declared_d_ = d;
  }

  // Incident edge ids of v, ascending.
  std::span<const EdgeId> incident(Vertex v) const {
    return {incident_.data() + offset_[v], degree(v)};
  }
  EdgeId incident_edge(Vertex v, std::size_t k) const {
    return incident_[offset_[v] + k];
  }
  Vertex other(EdgeId e, Vertex v) const {
    const Edge& x = edges_[e];
    return x.u == v ? x.v : x.u;
  }
  Vertex neighbor(Vertex v, std::size_t k) const {
    return other(incident_edge(v, k), v);
  }
  bool has_edge(Vertex a, Vertex b) const {
    return a != b && keys_.count(edge_key(a, b)) > 0;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offset_{0};
  std::vector<EdgeId> incident_;
  std::unordered_set<std::uint64_t> keys_;
  std::size_t max_degree_ = 0;
  std::optional<std::size_t> declared_d_;
};

// ---- edge-list I/O -------------------------------------------------------

// Format: first non-comment line "n m", then m lines "u v". Lines whose
// first non-blank character is '#' are ignored.
inline Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      auto p = out.find_first_not_of(" \t\r");
      if (p == std::string::npos || out[p] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    throw GraphError("line " + std::to_string(lineno) + ": " + what);
  };
  if (!next_line(line)) throw GraphError("empty input: missing header");
  long long n = -1, m = -1;
  {
    std::istringstream ss(line);
    std::string rest;
    if (!(ss >> n >> m) || n < 0 || m < 0 || (ss >> rest)) {
      fail("malformed header '" + line + "'");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) fail("expected " + std::to_string(m) + " edges");
    std::istringstream ss(line);
    long long u = -1, v = -1;
    std::string rest;
    if (!(ss >> u >> v) || (ss >> rest)) fail("malformed edge '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex id out of range");
    if (u == v) fail("self-loop at " + std::to_string(u));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (next_line(line)) fail("trailing data after " + std::to_string(m) + " edges");
  try {
    return Graph(static_cast<std::size_t>(n), std::move(edges));
  } catch (const GraphError& e) {
    throw GraphError(std::string("invalid graph: ") + e.what());
  }
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  try {
    return parse_graph(in);
  } catch (const GraphError& e) {
    throw GraphError(path + ": " + e.what());
  }
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  write_graph(out, g);
}

// ---- builders ------------------------------------------------------------

inline Graph empty_graph(std::size_t n) { return Graph(n, {}); }

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({Vertex(i), Vertex(i + 1)});
  return Graph(n, std::move(e));
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs n >= 3");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({Vertex(i), Vertex((i + 1) % n)});
  return Graph(n, std::move(e));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({Vertex(i), Vertex(j)});
  return Graph(n, std::move(e));
}

// K_{1,leaves}; vertex 0 is the center.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, Vertex(i)});
  return Graph(leaves + 1, std::move(e));
}

// k disjoint edges (2i, 2i+1).
inline Graph matching_graph(std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < k; ++i) e.push_back({Vertex(2 * i), Vertex(2 * i + 1)});
  return Graph(2 * k, std::move(e));
}

// Circulant graph: i ~ i+s (mod n) for s = 1..half. Regular of degree 2*half
// when 2*half < n.
inline Graph circulant_graph(std::size_t n, std::size_t half) {
  if (2 * half >= n) throw GraphError("circulant: need 2*half < n");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 1; s <= half; ++s) e.push_back({Vertex(i), Vertex((i + s) % n)});
  return Graph(n, std::move(e));
}

inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  auto id = [&](std::size_t r, std::size_t c) { return Vertex(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  return Graph(rows * cols, std::move(e));
}

inline Graph disjoint_union(const std::vector<Graph>& parts) {
  std::size_t n = 0;
  std::vector<Edge> e;
  for (const Graph& g : parts) {
    for (const Edge& x : g.edges()) e.push_back({Vertex(x.u + n), Vertex(x.v + n)});
    n += g.n();
  }
  return Graph(n, std::move(e));
}

inline Graph copies(const Graph& g, std::size_t k) {
  return disjoint_union(std::vector<Graph>(k, g));
}

// Uniform simple graph with n vertices and m edges (rejection on duplicates).
inline Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 && m > 0) throw GraphError("gnm: too few vertices");
  if (m > n * (n - 1) / 2) throw GraphError("gnm: too many edges");
  PrfStream rng(seed, Domain::kGraph, n, m);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> e;
  while (e.size() < m) {
    auto a = static_cast<Vertex>(rng.below(n));
    auto b = static_cast<Vertex>(rng.below(n));
    if (a == b || !seen.insert(edge_key(a, b)).second) continue;
    e.push_back({std::min(a, b), std::max(a, b)});
  }
  return Graph(n, std::move(e));
}

// Random bipartite graph between [0, a) and [a, a+b).
inline Graph random_bipartite(std::size_t a, std::size_t b, std::size_t m,
                              std::uint64_t seed) {
  if (m > a * b) throw GraphError("bipartite: too many edges");
  PrfStream rng(seed, Domain::kGraph, a * 1000003 + b, m);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> e;
  while (e.size() < m) {
    auto x = static_cast<Vertex>(rng.below(a));
    auto y = static_cast<Vertex>(a + rng.below(b));
    if (!seen.insert(edge_key(x, y)).second) continue;
    e.push_back({x, y});
  }
  return Graph(a + b, std::move(e));
}

// Relabel vertices: v -> perm[v]. Edge ids are preserved.
inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  if (perm.size() != g.n()) throw GraphError("relabel: size mismatch");
  std::vector<Edge> e;
  e.reserve(g.m());
  for (const Edge& x : g.edges()) e.push_back({perm[x.u], perm[x.v]});
  return Graph(g.n(), std::move(e));
}

// If m >= n the graph is returned unchanged. Otherwise a new vertex n is
// joined to every original vertex.
inline Graph virtual_augment(const Graph& g) {
  if (g.m() >= g.n()) return g;
  std::vector<Edge> e = g.edges();
  const auto hub = static_cast<Vertex>(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) e.push_back({Vertex(v), hub});
  return Graph(g.n() + 1, std::move(e));
}

// ---- matchings, covers, fractional matchings -----------------------------

inline bool is_matching(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<char> used(g.n(), 0);
  for (EdgeId e : edges) {
    if (e >= g.m()) return false;
    const Edge& x = g.edge(e);
    if (used[x.u] || used[x.v]) return false;
    used[x.u] = used[x.v] = 1;
  }
  return true;
}

struct VertexCover {
  std::vector<Vertex> members;  // ascending
};

inline bool is_vertex_cover(const Graph& g, const VertexCover& c) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : c.members) {
    if (v >= g.n()) return false;
    in[v] = 1;
  }
  for (const Edge& e : g.edges())
    if (!in[e.u] && !in[e.v]) return false;
  return true;
}

struct FractionalMatching {
  std::vector<double> weights;  // indexed by edge id
};

inline std::vector<double> vertex_loads(const Graph& g, const FractionalMatching& f) {
  std::vector<double> load(g.n(), 0.0);
  for (std::size_t e = 0; e < g.m(); ++e) {
    load[g.edge(EdgeId(e)).u] += f.weights[e];
    load[g.edge(EdgeId(e)).v] += f.weights[e];
  }
  return load;
}

// Nonnegative weights on E with every vertex load at most 1 (+tol).
inline bool is_fractional_matching(const Graph& g, const FractionalMatching& f,
                                   double tol = 1e-9) {
  if (f.weights.size() != g.m()) return false;
  for (double w : f.weights)
    if (!(w >= 0.0)) return false;
  for (double x : vertex_loads(g, f))
    if (x > 1.0 + tol) return false;
  return true;
}

}  // namespace mmest
