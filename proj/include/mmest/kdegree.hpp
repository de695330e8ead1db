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

// k-level degrees: d_1(v) = deg(v), d_k(v) = multiset of d_{k-1}(w), w ~ v.
//
// Forms are hash-consed in an interner: a form is an id, and two forms from
// graphs sharing one interner are equal iff their ids are equal. The
// interner keys on the exact child list, so equality never rests on a hash.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmest/graph.hpp"

namespace mmest {

struct KLevelDegree {
  std::uint32_t id = 0;
  int level = 0;
  friend bool operator==(const KLevelDegree&, const KLevelDegree&) = default;
};

class LevelDegreeInterner {
 public:
  // Level-1 form of a vertex of degree `deg`.
  std::uint32_t leaf(std::size_t deg) {
    return intern({1, static_cast<std::uint32_t>(deg)});
  }

  // Level-k form from the (k-1)-level ids of the neighbors.
  std::uint32_t node(int level, std::vector<std::uint32_t> children) {
    std::sort(children.begin(), children.end());
    children.insert(children.begin(), static_cast<std::uint32_t>(level));
    return intern(std::move(children));
  }

  std::size_t size() const { return keys_.size(); }

  // Nested rendering, e.g. {{1,1},{2}}; truncated past `limit` characters.
  std::string render(std::uint32_t id, std::size_t limit = 200) const {
    std::string out;
    render_into(id, out, limit);
    if (out.size() > limit) out = out.substr(0, limit) + "...";
    return out;
  }

  // All vertices' level-k forms, computed bottom-up.
  std::vector<std::uint32_t> all(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("k-level degree needs k >= 1");
    std::vector<std::uint32_t> cur(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) cur[v] = leaf(g.degree(Vertex(v)));
    std::vector<std::uint32_t> nxt(g.n());
    std::vector<std::uint32_t> kids;
    for (int level = 2; level <= k; ++level) {
      for (std::size_t v = 0; v < g.n(); ++v) {
        kids.clear();
        for (EdgeId e : g.incident(Vertex(v))) kids.push_back(cur[g.other(e, Vertex(v))]);
        nxt[v] = node(level, kids);
      }
      std::swap(cur, nxt);
    }
    return cur;
  }

 private:
  std::uint32_t intern(std::vector<std::uint32_t> key) {
    auto [it, fresh] = ids_.try_emplace(std::move(key), static_cast<std::uint32_t>(keys_.size()));
    if (fresh) keys_.push_back(&it->first);
    return it->second;
  }

  void render_into(std::uint32_t id, std::string& out, std::size_t limit) const {
    if (out.size() > limit) return;
    const auto& key = *keys_[id];
    if (key[0] == 1) {
      out += std::to_string(key[1]);
      return;
    }
    out += '{';
    for (std::size_t i = 1; i < key.size(); ++i) {
      if (i > 1) out += ',';
      render_into(key[i], out, limit);
    }
    out += '}';
  }

  std::map<std::vector<std::uint32_t>, std::uint32_t> ids_;
  std::vector<const std::vector<std::uint32_t>*> keys_;
};

inline KLevelDegree k_level_degree(const Graph& g, Vertex v, int k,
                                   LevelDegreeInterner& in) {
  return {in.all(g, k)[v], k};
}

struct BijectionResult {
  bool ok = false;
  std::vector<Vertex> phi;  // phi[v in G] = vertex of H with the same form
  // On failure: the first class whose multiplicities differ.
  std::string mismatch;
  std::size_t count_g = 0;
  std::size_t count_h = 0;
};

// Groups both vertex sets by level-k form and pairs them class by class.
inline BijectionResult find_degree_bijection(const Graph& G, const Graph& H, int k,
                                             LevelDegreeInterner& in) {
  BijectionResult r;
  if (G.n() != H.n()) {
    r.mismatch = "vertex counts differ";
    r.count_g = G.n();
    r.count_h = H.n();
    return r;
  }
  const auto fg = in.all(G, k);
  const auto fh = in.all(H, k);
  std::map<std::uint32_t, std::pair<std::vector<Vertex>, std::vector<Vertex>>> cls;
  for (std::size_t v = 0; v < G.n(); ++v) cls[fg[v]].first.push_back(Vertex(v));
  for (std::size_t v = 0; v < H.n(); ++v) cls[fh[v]].second.push_back(Vertex(v));
  r.phi.assign(G.n(), 0);
  for (const auto& [id, sides] : cls) {
    if (sides.first.size() != sides.second.size()) {
      r.mismatch = in.render(id);
      r.count_g = sides.first.size();
      r.count_h = sides.second.size();
      r.phi.clear();
      return r;
    }
    for (std::size_t i = 0; i < sides.first.size(); ++i) r.phi[sides.first[i]] = sides.second[i];
  }
  r.ok = true;
  return r;
}

}  // namespace mmest
