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

// Edge streams. Every source counts its emissions; that counter is the
// sample ledger the estimators are charged against.

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmest/graph.hpp"
#include "mmest/prf.hpp"

namespace mmest {

struct StreamedEdge {
  EdgeId id = 0;
  Vertex u = 0;
  Vertex v = 0;
};

class StreamExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
concept EdgeSource = requires(S s, const S cs) {
  { s.next() } -> std::same_as<StreamedEdge>;
  { cs.consumed() } -> std::convertible_to<std::uint64_t>;
  { cs.edge_count() } -> std::convertible_to<std::uint64_t>;
};

enum class StreamMode { kIid, kPermutation };

class EdgeStream {
 public:
  EdgeStream(const Graph& g, StreamMode mode, std::uint64_t seed)
      : g_(&g), mode_(mode), rng_(seed, Domain::kStream) {
    if (g.m() == 0) throw StreamExhausted("stream over an empty edge set");
    if (mode_ == StreamMode::kPermutation) {
      order_.resize(g.m());
      for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = EdgeId(i);
      PrfStream shuf(seed, Domain::kShuffle);
      shuffle_tail(order_, 0, shuf);
    }
  }

  // Permutation stream whose first emissions are fixed: `prefix` is taken as
  // already consumed, the remaining edges follow in uniformly random order.
  static EdgeStream with_prefix(const Graph& g, const std::vector<EdgeId>& prefix,
                                std::uint64_t seed) {
    EdgeStream s(g, StreamMode::kIid, seed);
    s.mode_ = StreamMode::kPermutation;
    std::vector<char> seen(g.m(), 0);
    s.order_.clear();
    for (EdgeId e : prefix) {
      if (e >= g.m() || seen[e]) throw std::invalid_argument("bad prefix");
      seen[e] = 1;
      s.order_.push_back(e);
    }
    for (std::size_t e = 0; e < g.m(); ++e)
      if (!seen[e]) s.order_.push_back(EdgeId(e));
    PrfStream shuf(seed, Domain::kShuffle);
    shuffle_tail(s.order_, prefix.size(), shuf);
    s.consumed_ = prefix.size();
    return s;
  }

  StreamedEdge next() {
    EdgeId id;
    if (mode_ == StreamMode::kIid) {
      id = static_cast<EdgeId>(rng_.below(g_->m()));
    } else {
      if (consumed_ >= order_.size()) throw StreamExhausted("permutation exhausted");
      id = order_[consumed_];
    }
    ++consumed_;
    const Edge& e = g_->edge(id);
    return {id, e.u, e.v};
  }

  std::uint64_t consumed() const { return consumed_; }
  std::uint64_t edge_count() const { return g_->m(); }
  StreamMode mode() const { return mode_; }
  const Graph& graph() const { return *g_; }

 private:
  static void shuffle_tail(std::vector<EdgeId>& a, std::size_t from, PrfStream& rng) {
    for (std::size_t i = a.size(); i > from + 1; --i) {
      const std::size_t j = from + rng.below(i - from);
      std::swap(a[i - 1], a[j]);
    }
  }

  const Graph* g_;
  StreamMode mode_;
  PrfStream rng_;
  std::vector<EdgeId> order_;
  std::uint64_t consumed_ = 0;
};

// Replays a fixed sequence of edge ids; used for adversarial and exhaustive
// stream tests. Cycles when `cycle` is set, else throws at the end.
class ScriptedStream {
 public:
  ScriptedStream(const Graph& g, std::vector<EdgeId> script, bool cycle = false)
      : g_(&g), script_(std::move(script)), cycle_(cycle) {
    for (EdgeId e : script_)
      if (e >= g.m()) throw std::invalid_argument("script edge out of range");
  }

  StreamedEdge next() {
    if (script_.empty() || (!cycle_ && consumed_ >= script_.size()))
      throw StreamExhausted("script exhausted");
    const EdgeId id = script_[consumed_ % script_.size()];
    ++consumed_;
    const Edge& e = g_->edge(id);
    return {id, e.u, e.v};
  }

  std::uint64_t consumed() const { return consumed_; }
  std::uint64_t edge_count() const { return g_->m(); }

 private:
  const Graph* g_;
  std::vector<EdgeId> script_;
  bool cycle_;
  std::uint64_t consumed_ = 0;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wraps a source and refuses to emit more than `budget` edges. consumed()
// counts emissions through this wrapper only.
template <EdgeSource S>
class BudgetedStream {
 public:
  BudgetedStream(S& inner, std::uint64_t budget) : inner_(&inner), budget_(budget) {}

  StreamedEdge next() {
    if (used_ >= budget_) throw BudgetExhausted("sample budget exhausted");
    StreamedEdge e = inner_->next();
    ++used_;
    return e;
  }

  std::uint64_t consumed() const { return used_; }
  std::uint64_t edge_count() const { return inner_->edge_count(); }
  std::uint64_t budget() const { return budget_; }

 private:
  S* inner_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

}  // namespace mmest
