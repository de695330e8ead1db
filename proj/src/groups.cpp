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


#include "mmest/groups.hpp"

namespace mmest {

void validate_group(const GroupSpec& g, std::size_t assoc_limit) {
  const std::size_t R = g.R;
  if (R == 0 || R > 65535) throw GroupError("group order out of range");
  if (g.table.size() != R * R || g.inverse.size() != R) throw GroupError("table size mismatch");
  for (auto x : g.table)
    if (x >= R) throw GroupError("table entry out of range");
  for (std::uint32_t a = 0; a < R; ++a) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a) throw GroupError("bad identity");
    if (g.mul(a, g.inverse[a]) != g.identity || g.mul(g.inverse[a], a) != g.identity)
      throw GroupError("bad inverse");
  }
  if (R <= assoc_limit) {
    for (std::uint32_t a = 0; a < R; ++a)
      for (std::uint32_t b = 0; b < R; ++b)
        for (std::uint32_t c = 0; c < R; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) throw GroupError("not associative");
  }
  for (auto s : g.generators)
    if (s >= R) throw GroupError("generator out of range");
}

std::size_t generated_order(const GroupSpec& g) {
  std::vector<char> seen(g.R, 0);
  std::vector<std::uint32_t> st{g.identity};
  seen[g.identity] = 1;
  std::size_t count = 1;
  while (!st.empty()) {
    const auto a = st.back();
    st.pop_back();
    for (auto s : g.generators) {
      for (auto b : {g.mul(a, s), g.mul(a, g.inverse[s])}) {
        if (!seen[b]) {
          seen[b] = 1;
          ++count;
          st.push_back(b);
        }
      }
    }
  }
  return count;
}

GroupSpec cyclic_group(std::size_t n) {
  std::vector<std::uint32_t> e(n);
  std::iota(e.begin(), e.end(), 0);
  return detail::table_group("Z" + std::to_string(n), e, 0u,
                             [n](std::uint32_t a, std::uint32_t b) { return std::uint32_t((a + b) % n); });
}

GroupSpec product_group(const GroupSpec& A, const GroupSpec& B) {
  using P = std::pair<std::uint32_t, std::uint32_t>;
  std::vector<P> e;
  for (std::uint32_t a = 0; a < A.R; ++a)
    for (std::uint32_t b = 0; b < B.R; ++b) e.push_back({a, b});
  return detail::table_group(A.name + "x" + B.name, e, P{A.identity, B.identity},
                             [&](const P& x, const P& y) {
                               return P{A.mul(x.first, y.first), B.mul(x.second, y.second)};
                             });
}

GroupSpec dihedral_group(std::size_t n) {
  using P = std::pair<std::uint32_t, std::uint32_t>;
  std::vector<P> e;
  for (std::uint32_t f = 0; f < 2; ++f)
    for (std::uint32_t r = 0; r < n; ++r) e.push_back({r, f});
  return detail::table_group("D" + std::to_string(n), e, P{0, 0}, [n](const P& x, const P& y) {
    const std::uint32_t r = x.second ? std::uint32_t((x.first + n - y.first) % n)
                                     : std::uint32_t((x.first + y.first) % n);
    return P{r, x.second ^ y.second};
  });
}

GroupSpec symmetric_group(std::size_t k) {
  if (k < 1 || k > 7) throw GroupError("symmetric_group supports k <= 7");
  using P = std::vector<std::uint8_t>;
  P id(k);
  std::iota(id.begin(), id.end(), 0);
  std::vector<P> e;
  P p = id;
  do e.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return detail::table_group("S" + std::to_string(k), e, id, [k](const P& a, const P& b) {
    P r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = a[b[i]];
    return r;
  });
}

GroupSpec psl2_group(std::uint32_t p) {
  using M = std::array<std::uint32_t, 4>;
  auto norm = [p](M x) {
    const std::uint32_t lead = x[0] != 0 ? x[0] : x[1];
    if (lead > (p - 1) / 2)
      for (auto& v : x) v = (p - v) % p;
    return x;
  };
  std::vector<M> e;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d)
          if ((a * d + p * p - b * c) % p == 1) {
            M x = norm({a, b, c, d});
            if (x == M{a, b, c, d}) e.push_back(x);
          }
  return detail::table_group("PSL2_" + std::to_string(p), e, M{1, 0, 0, 1},
                             [p, norm](const M& x, const M& y) {
                               return norm({(x[0] * y[0] + x[1] * y[2]) % p,
                                            (x[0] * y[1] + x[1] * y[3]) % p,
                                            (x[2] * y[0] + x[3] * y[2]) % p,
                                            (x[2] * y[1] + x[3] * y[3]) % p});
                             });
}

std::vector<std::string> group_catalog_names() {
  return {"Z11", "Z13", "Z5xZ5", "D7", "D11", "S4",      "S5",      "PSL2_5",
          "PSL2_7", "D60", "PSL2_11", "S6", "PSL2_13", "S7"};
}

GroupSpec catalog_group(const std::string& name) {
  if (name == "Z5xZ5") return product_group(cyclic_group(5), cyclic_group(5));
  if (name.rfind("PSL2_", 0) == 0) return psl2_group(std::uint32_t(std::stoul(name.substr(5))));
  if (name[0] == 'Z') return cyclic_group(std::stoul(name.substr(1)));
  if (name[0] == 'D') return dihedral_group(std::stoul(name.substr(1)));
  if (name[0] == 'S') return symmetric_group(std::stoul(name.substr(1)));
  throw GroupError("unknown catalog group " + name);
}

Graph cayley_graph(const GroupSpec& grp) {
  validate_group(grp, 0);
  std::vector<Edge> e;
  std::vector<std::uint64_t> keys;
  for (std::uint32_t a = 0; a < grp.R; ++a)
    for (auto s : grp.generators) {
      const std::uint32_t b = grp.mul(a, s);
      if (a == b) throw GroupError("identity cannot be a generator");
      keys.push_back(edge_key(a, b));
    }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (auto k : keys) e.push_back({Vertex(k >> 32), Vertex(k & 0xffffffffu)});
  return Graph(grp.R, std::move(e));
}

std::size_t girth_from(const Graph& g, Vertex root, std::size_t best) {
  std::vector<std::uint32_t> dist(g.n(), UINT32_MAX), via(g.n(), UINT32_MAX);
  std::vector<Vertex> q{root};
  dist[root] = 0;
  for (std::size_t h = 0; h < q.size(); ++h) {
    const Vertex x = q[h];
    if (2 * std::size_t(dist[x]) + 1 >= best) break;
    for (EdgeId e : g.incident(x)) {
      if (e == via[x]) continue;
      const Vertex y = g.other(e, x);
      if (dist[y] == UINT32_MAX) {
        dist[y] = dist[x] + 1;
        via[y] = e;
        q.push_back(y);
      } else {
        best = std::min<std::size_t>(best, std::size_t(dist[x]) + dist[y] + 1);
      }
    }
  }
  return best;
}

std::size_t girth(const Graph& g) {
  std::size_t best = kInfiniteGirth;
  for (std::size_t v = 0; v < g.n(); ++v) best = girth_from(g, Vertex(v), best);
  return best;
}

std::size_t cayley_girth(const GroupSpec& grp) {
  return girth_from(cayley_graph(grp), Vertex(grp.identity));
}

double moore_bound(double D, std::size_t g) {
  if (g < 3) return 1.0;
  const std::size_t terms = g % 2 ? (g - 1) / 2 : g / 2;
  double sum = 0.0, pw = 1.0;
  for (std::size_t i = 0; i < terms; ++i, pw *= D - 1) sum += pw;
  return g % 2 ? 1.0 + D * sum : 2.0 * sum;
}

GeneratorSearch find_high_girth_generators(std::size_t l, std::size_t want,
                                           std::size_t budget, std::uint64_t seed,
                                           std::size_t max_order) {
  GeneratorSearch out;
  if (l == 0) {
    out.reason = "need at least one generator";
    return out;
  }
  for (const auto& name : group_catalog_names()) {
    GroupSpec grp = catalog_group(name);
    if (grp.R > max_order) continue;
    if (grp.R < 2 * l + 1) continue;
    if (double(grp.R) < moore_bound(double(l), want)) continue;  // all-involution degree
    PrfStream rng(seed, Domain::kSampler, grp.R, l);
    for (std::size_t t = 0; t < budget; ++t) {
      ++out.attempts;
      std::vector<std::uint32_t> order(grp.R);
      for (std::uint32_t i = 0; i < grp.R; ++i) order[i] = i;
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
      std::vector<std::uint32_t> gens;
      std::vector<char> taken(grp.R, 0);
      taken[grp.identity] = 1;
      for (std::uint32_t s : order) {
        if (gens.size() == l) break;
        if (taken[s] || taken[grp.inverse[s]]) continue;
        grp.generators = gens;
        grp.generators.push_back(s);
        if (cayley_girth(grp) < want) continue;
        taken[s] = taken[grp.inverse[s]] = 1;
        gens.push_back(s);
      }
      if (gens.size() < l) continue;
      grp.generators = gens;
      if (generated_order(grp) != grp.R) continue;
      out.girth = cayley_girth(grp);
      out.found = grp;
      return out;
    }
  }
  out.reason = "no catalog group yielded " + std::to_string(l) + " generators with girth >= " +
               std::to_string(want) + " within budget";
  return out;
}

LiftedGraph lift(const Graph& base, const GroupSpec& grp,
                 const std::vector<std::uint32_t>& labels) {
  if (labels.size() != base.m()) throw GroupError("one label per base edge required");
  for (auto l : labels)
    if (l >= grp.generators.size()) throw GroupError("label index out of range");
  LiftedGraph L;
  L.R = grp.R;
  L.labels = labels;
  std::vector<Edge> e;
  e.reserve(base.m() * grp.R);
  for (std::size_t i = 0; i < base.m(); ++i) {
    const Vertex a = std::min(base.edge(EdgeId(i)).u, base.edge(EdgeId(i)).v);
    const Vertex b = std::max(base.edge(EdgeId(i)).u, base.edge(EdgeId(i)).v);
    const auto s = grp.generators[labels[i]];
    for (std::uint32_t g = 0; g < grp.R; ++g)
      e.push_back({Vertex(a * grp.R + g), Vertex(b * grp.R + grp.mul(g, s))});
  }
  L.lifted = Graph(base.n() * grp.R, std::move(e));
  return L;
}

}  // namespace mmest
