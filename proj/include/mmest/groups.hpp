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

// Finite groups given by multiplication tables, Cayley graphs, girth, a
// randomized search for high-girth generator sets, and graph lifts.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmest/graph.hpp"
#include "mmest/prf.hpp"

namespace mmest {

struct GroupSpec {
  std::string name;
  std::size_t R = 0;
  std::uint32_t identity = 0;
  std::vector<std::uint16_t> table;  // table[a*R + b] = a*b
  std::vector<std::uint16_t> inverse;
  std::vector<std::uint32_t> generators;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * R + b]; }
};

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Closure, identity, inverses, associativity. O(R^3) associativity check is
// skipped above `assoc_limit` elements (tables from the catalog are built
// from faithful representations).
void validate_group(const GroupSpec& g, std::size_t assoc_limit = 200);

// Elements reachable from the identity using the generators.
std::size_t generated_order(const GroupSpec& g);

namespace detail {

// Builds a table from elements of any type with a product and equality.
template <class T, class Mul>
GroupSpec table_group(std::string name, const std::vector<T>& elems, const T& id, Mul mul) {
  GroupSpec g;
  g.name = std::move(name);
  g.R = elems.size();
  std::map<T, std::uint32_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = std::uint32_t(i);
  g.identity = index.at(id);
  g.table.resize(g.R * g.R);
  for (std::size_t a = 0; a < g.R; ++a)
    for (std::size_t b = 0; b < g.R; ++b)
      g.table[a * g.R + b] = static_cast<std::uint16_t>(index.at(mul(elems[a], elems[b])));
  g.inverse.resize(g.R);
  for (std::size_t a = 0; a < g.R; ++a)
    for (std::size_t b = 0; b < g.R; ++b)
      if (g.table[a * g.R + b] == g.identity) g.inverse[a] = static_cast<std::uint16_t>(b);
  return g;
}

}  // namespace detail

GroupSpec cyclic_group(std::size_t n);

GroupSpec product_group(const GroupSpec& A, const GroupSpec& B);

// Dihedral group of order 2n: (r, f) = rotation^r * flip^f.
GroupSpec dihedral_group(std::size_t n);

// Symmetric group S_k as permutations of {0..k-1}; (p*q)(i) = p(q(i)).
GroupSpec symmetric_group(std::size_t k);

// PSL(2, p) for an odd prime p: 2x2 matrices of determinant 1 mod p modulo
// the sign, each stored in the normal form with the first nonzero entry of
// (a, b) at most (p-1)/2.
GroupSpec psl2_group(std::uint32_t p);

// Candidate groups for the generator search, smallest first.
std::vector<std::string> group_catalog_names();

GroupSpec catalog_group(const std::string& name);

// Undirected Cayley graph: g ~ g*s for every generator s. An involution or a
// generator listed with its inverse gives one simple edge, not two.
Graph cayley_graph(const GroupSpec& grp);

inline constexpr std::size_t kInfiniteGirth = std::numeric_limits<std::size_t>::max();

// Shortest cycle through `root` or nearer: BFS from root, each non-tree edge
// (x, y) closes a walk of length dist[x] + dist[y] + 1.
std::size_t girth_from(const Graph& g, Vertex root, std::size_t best = kInfiniteGirth);

// Exact girth by BFS from every vertex; kInfiniteGirth for forests.
std::size_t girth(const Graph& g);

// Cayley graphs are vertex-transitive: one BFS from the identity suffices.
std::size_t cayley_girth(const GroupSpec& grp);

// Fewest vertices of a D-regular graph with girth g.
double moore_bound(double D, std::size_t g);

struct GeneratorSearch {
  std::optional<GroupSpec> found;
  std::size_t girth = 0;
  std::size_t attempts = 0;
  std::string reason;  // set when nothing was found
};

// Up to `budget` greedy attempts per catalog group with order <= max_order.
// An attempt walks the group elements in a PRF-shuffled order and keeps an
// element when the Cayley graph of the kept set still has girth >= want. A
// set qualifies if it has l elements, generates the group, and contains no
// element together with its inverse.
GeneratorSearch find_high_girth_generators(std::size_t l, std::size_t want,
                                           std::size_t budget, std::uint64_t seed,
                                           std::size_t max_order = 5040);

struct LiftedGraph {
  Graph lifted;
  std::size_t R = 0;
  std::vector<std::uint32_t> labels;  // base edge -> generator index
  Vertex id(Vertex v, std::uint32_t r) const { return Vertex(v * R + r); }
};

// Vertex (v, g) gets id v*R + g. Base edge e = (a, b) with a < b becomes the
// R edges ((a, g), (b, g*s_e)); lifted edge id = e*R + g.
LiftedGraph lift(const Graph& base, const GroupSpec& grp,
                 const std::vector<std::uint32_t>& labels);

}  // namespace mmest
