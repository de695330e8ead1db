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

// Brute-force subgraph counts for patterns with a handful of edges.
//
// A subgraph here is a set of edges; its vertices are the endpoints of the
// chosen edges. Two edge sets are compared through a canonical form: the
// sorted list of per-component codes, each code being the lexicographically
// smallest edge list over all vertex orders consistent with degree order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mmest/graph.hpp"

namespace mmest {

inline constexpr std::size_t kMaxPatternEdges = 5;

using CanonicalForm = std::string;

namespace detail {

// Code for one connected component given as local edges over [0, k).
std::string component_code(std::size_t k, const std::vector<std::pair<int, int>>& edges);

}  // namespace detail

// Canonical form of the edge set {(u_i, v_i)} (vertex labels arbitrary).
CanonicalForm canonical_form(const std::vector<Edge>& edges);

CanonicalForm canonical_form(const Graph& g);

// Pattern graph (no isolated vertices) rebuilt from an edge list.
Graph compact_graph(const std::vector<Edge>& edges);

// Every isomorphism class of graphs with exactly j edges and no isolated
// vertices, j = 1..k; connected and disconnected alike.
std::vector<Graph> pattern_catalog(std::size_t k);

// Number of edge subsets of each size j <= k, guarded against blowup.
void check_enumeration_size(std::size_t m, std::size_t k, double limit = 4e8);

// Tally of canonical forms over all edge subsets of size 1..k.
std::map<CanonicalForm, std::uint64_t> subset_census(const Graph& g, std::size_t k);

// #(K : g): edge subsets of g isomorphic to the pattern (isolated vertices of
// the pattern are ignored).
std::uint64_t subgraph_count(const Graph& g, const Graph& pattern);

struct PatternRow {
  CanonicalForm form;
  std::size_t edges = 0;
  std::uint64_t count_g = 0;
  std::uint64_t count_h = 0;
  bool equal() const { return count_g == count_h; }
};

struct IndistinguishabilityReport {
  std::size_t k = 0;
  std::vector<PatternRow> rows;  // by edge count, then form
  bool all_equal = true;
  std::optional<PatternRow> first_difference;
};

IndistinguishabilityReport verify_indistinguishable(const Graph& G, const Graph& H,
                                                    std::size_t k);

}  // namespace mmest
