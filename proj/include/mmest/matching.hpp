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

// Exact maximum matching (Edmonds' blossom algorithm), a subset-DP oracle
// for tiny graphs, and greedy maximal matching.

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "mmest/graph.hpp"

namespace mmest {

inline constexpr std::size_t kExactMmEdgeLimit = std::size_t{1} << 22;

class SolverLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mate[v] = partner or -1, for one maximum matching.
std::vector<int> maximum_matching(const Graph& g);

std::size_t exact_mm(const Graph& g);

// Subset DP over vertex masks; independent of the blossom code.
std::size_t brute_force_mm(const Graph& g);

// Scans edges in `order` and keeps each edge whose endpoints are both free.
std::vector<EdgeId> greedy_maximal_matching(const Graph& g, std::span<const EdgeId> order);

}  // namespace mmest
