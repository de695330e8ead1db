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

// Recursive degree-padded pairs G^(k), H^(k) with matching-size gap and
// equal k-level degree statistics.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmest/graph.hpp"

namespace mmest {

struct StructureCounts {
  std::uint64_t N_h = 0, N_l = 0, d_h = 0, d_l = 0;
  friend bool operator==(const StructureCounts&, const StructureCounts&) = default;
};

// G1 = K_{c+1} plus (c+1)c/2 isolated edges; H1 = c+1 disjoint c-stars.
// In G1 the clique occupies vertices [0, c+1); in H1 star i has center
// i*(c+1) followed by its petals.
std::pair<Graph, Graph> build_base_pair(std::size_t c);

// Distinct degrees among non-isolated vertices, with counts.
std::map<std::size_t, std::size_t> degree_histogram(const Graph& g);

struct PaddedGraph {
  Graph graph;
  std::vector<Vertex> specials;  // the added vertices, ids >= old n
};

// Adds d_h - d_l special vertices, each joined to every degree-d_l vertex.
PaddedGraph degree_pad(const Graph& g);

StructureCounts structure_of(const Graph& g);

// The recurrence, evaluated without building graphs.
std::vector<StructureCounts> structure_recurrence(std::uint64_t c, int k);

struct PairBuild {
  std::size_t c = 0;
  int k = 0;
  Graph G, H;
  std::vector<StructureCounts> trace_g, trace_h;  // index j-1 for level j
  std::vector<EdgeId> witness_matching;           // in G
  VertexCover witness_cover;                      // of H
};

// G^(1), H^(1) are the base pair; G^(j) is c disjoint copies of the padded
// G^(j-1), likewise for H. Requires c >= 2k.
PairBuild build_pair(std::size_t c, int k);

}  // namespace mmest
