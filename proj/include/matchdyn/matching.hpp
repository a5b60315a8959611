// Copyright 2026 The matchdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Matching dynamics with k partners per vertex under the plain, social,
// local, considerate and friendship constraints.

#ifndef MATCHDYN_MATCHING_HPP_
#define MATCHDYN_MATCHING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "matchdyn/id_set.hpp"
#include "matchdyn/rational.hpp"

namespace matchdyn {

using VertexId = int;
using EdgeId = int;

enum class Variant { kPlain, kSocial, kLocal, kConsiderate, kFriendship };

std::string_view variant_name(Variant v);
// Throws ValidationError for unknown names.
Variant parse_variant(std::string_view name);

// Which current partners the considerate filter protects: those of both
// endpoints, or only those of the edge's first endpoint.
enum class ConsiderateMode { kSymmetric, kProposerOnly };

// An edge and the benefit each endpoint draws from it; correlated edges have
// bu == bv. A zero benefit marks the partner as unacceptable.
struct MatchingEdge {
  VertexId u = 0;
  VertexId v = 0;
  Rational bu;
  Rational bv;

  bool correlated() const { return bu == bv; }
};

struct AlphaEntry {
  VertexId from = 0;
  VertexId to = 0;
  Rational value;  // >= 0
};

struct EdgeTag {};
using Matching = SortedIdSet<EdgeTag>;

class MatchingInstance {
 public:
  struct Definition {
    int vertices = 0;
    std::vector<MatchingEdge> edges;
    std::vector<std::pair<VertexId, VertexId>> links;
    std::vector<AlphaEntry> alphas;
    Variant variant = Variant::kPlain;
    int k = 1;
    int lookahead = 2;
    // side[v] is 0 for U and 1 for W.
    std::optional<std::vector<int>> bipartition;
    ConsiderateMode considerate_mode = ConsiderateMode::kSymmetric;
  };

  // Throws ValidationError.
  explicit MatchingInstance(Definition definition);

  const Definition& definition() const { return def_; }
  int num_vertices() const { return def_.vertices; }
  int num_edges() const { return static_cast<int>(def_.edges.size()); }
  const MatchingEdge& edge(EdgeId e) const { return def_.edges[e]; }
  std::span<const MatchingEdge> edges() const { return def_.edges; }
  Variant variant() const { return def_.variant; }
  int k() const { return def_.k; }
  int lookahead() const { return def_.lookahead; }
  const std::optional<std::vector<int>>& bipartition() const { return def_.bipartition; }
  ConsiderateMode considerate_mode() const { return def_.considerate_mode; }

  // Edge ids at v, increasing.
  std::span<const EdgeId> incident(VertexId v) const { return incident_[v]; }
  std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
  VertexId other(EdgeId e, VertexId x) const {
    return def_.edges[e].u == x ? def_.edges[e].v : def_.edges[e].u;
  }
  const Rational& utility(EdgeId e, VertexId x) const {
    return def_.edges[e].u == x ? def_.edges[e].bu : def_.edges[e].bv;
  }
  bool correlated() const;

  bool has_link(VertexId a, VertexId b) const { return links_.count(key(a, b)) != 0; }
  std::span<const VertexId> link_neighbors(VertexId v) const { return link_adj_[v]; }
  std::span<const std::pair<VertexId, VertexId>> links() const { return def_.links; }

  Rational alpha(VertexId from, VertexId to) const;
  // (to, alpha) pairs with positive alpha, by increasing `to`.
  std::span<const std::pair<VertexId, Rational>> friends(VertexId from) const {
    return friends_[from];
  }
  bool symmetric_alpha() const;

 private:
  std::uint64_t key(VertexId a, VertexId b) const {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(def_.vertices) +
           static_cast<std::uint64_t>(b);
  }

  Definition def_;
  std::vector<std::vector<EdgeId>> incident_;
  std::unordered_set<std::uint64_t> links_;
  std::vector<std::vector<VertexId>> link_adj_;
  std::vector<std::vector<std::pair<VertexId, Rational>>> friends_;
  std::vector<std::pair<std::uint64_t, EdgeId>> edge_index_;  // sorted by key
};

bool is_feasible(const MatchingInstance& inst, const Matching& m);
// Throws InfeasibleStart for unknown edges or a vertex above capacity.
void require_feasible(const MatchingInstance& inst, const Matching& m);

// Sum of v's benefits from its matched edges.
Rational benefit(const MatchingInstance& inst, const Matching& m, VertexId v);

// B(M,v) plus the alpha-weighted benefits of v's friends. Throws WrongVariant
// unless the instance is a friendship instance.
Rational perceived_utility(const MatchingInstance& inst, const Matching& m, VertexId v);

// Adding `edge` while each endpoint gives up at most one current edge.
struct Move {
  EdgeId edge = 0;
  std::vector<EdgeId> dropped;  // increasing, at most two

  friend bool operator==(const Move&, const Move&) = default;
};

// Every way of resolving `edge` as a blocking pair, canonical move first.
// Each endpoint either keeps all its edges (needs a free slot) or drops one;
// without a free slot it must drop one.
std::vector<Move> improving_moves(const MatchingInstance& inst, const Matching& m, EdgeId edge);

// Edges with at least one improving move, increasing.
std::vector<EdgeId> blocking_pairs(const MatchingInstance& inst, const Matching& m);

bool is_blocking_pair(const MatchingInstance& inst, const Matching& m, EdgeId edge);

bool is_variant_stable(const MatchingInstance& inst, const Matching& m);

// Applies the canonical move for `edge`: an endpoint with a free slot keeps
// its edges, otherwise it drops its least valuable acceptable edge.
// Throws NotBlocking.
Matching resolve_pair(const MatchingInstance& inst, const Matching& m, EdgeId edge);

// Throws NotBlocking when `move` is not among the improving moves.
Matching apply_move(const MatchingInstance& inst, const Matching& m, const Move& move);

// Hop distance between a and b in the graph of links plus matched edges,
// or nullopt when it exceeds `limit`.
std::optional<int> link_distance(const MatchingInstance& inst, const Matching& m, VertexId a,
                                 VertexId b, int limit);

struct MatchingTrace {
  std::vector<Move> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  friend bool operator==(const MatchingTrace&, const MatchingTrace&) = default;
};

// Throws InvalidTrace.
Matching replay(const MatchingInstance& inst, const Matching& m0, const MatchingTrace& trace);

}  // namespace matchdyn

#endif  // MATCHDYN_MATCHING_HPP_
