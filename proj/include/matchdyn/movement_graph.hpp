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

// The object-movement view of a consistent game: coalitions are vertices,
// weight-increasing generation rules are exchange edges along which a
// marking travels, and domination rules are hyperedges. A marking set is a
// coalition structure.

#ifndef MATCHDYN_MOVEMENT_GRAPH_HPP_
#define MATCHDYN_MOVEMENT_GRAPH_HPP_

#include <map>
#include <string>
#include <vector>

#include "matchdyn/errors.hpp"
#include "matchdyn/game.hpp"

namespace matchdyn {

struct ExchangeEdge {
  CoalitionId from = 0;
  CoalitionId to = 0;
  int rule = 0;  // index into the generation rules
};

struct Hyperedge {
  std::vector<CoalitionId> sources;  // strictly increasing, nonempty
  CoalitionId target = 0;
  int rule = -1;  // stored domination rule index, or -1 for weight domination
};

struct MarkingState {
  CoalitionStructure marked;

  friend bool operator==(const MarkingState&, const MarkingState&) = default;
};

struct Action {
  enum class Kind { kCreateAt, kMoveAlong };
  Kind kind = Kind::kCreateAt;
  CoalitionId vertex = 0;  // the vertex that becomes marked
  int edge = -1;           // exchange edge index for kMoveAlong

  static Action create_at(CoalitionId v) { return {Kind::kCreateAt, v, -1}; }
  static Action move_along(int edge, CoalitionId to) { return {Kind::kMoveAlong, to, edge}; }
  friend bool operator==(const Action&, const Action&) = default;
};

class IllegalAction : public Error {
 public:
  enum class Reason { kNotGenerator, kUnknownEdge, kSourceUnmarked, kMarked, kDominated };

  IllegalAction(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

class MovementGraph {
 public:
  // Throws InconsistentSpec when the rules fail the consistency check or
  // weight domination is disabled.
  static MovementGraph build(const GameSpec& spec);

  const GameSpec& spec() const { return spec_; }
  int num_vertices() const { return spec_.num_coalitions(); }
  bool is_generator(CoalitionId v) const { return spec_.is_self_generating(v); }
  const std::vector<ExchangeEdge>& exchange_edges() const { return edges_; }
  // Edge indices leaving v, ordered by target id.
  const std::vector<int>& out_edges(CoalitionId v) const { return out_[v]; }
  // Stored domination rules only; weight domination is evaluated from weights.
  const std::vector<Hyperedge>& stored_hyperedges() const { return hyper_; }
  const std::vector<int>& stored_hyperedges_into(CoalitionId v) const { return hyper_into_[v]; }
  // Every hyperedge of D1 and D_w, materialized.
  std::vector<Hyperedge> all_hyperedges() const;
  // Vertices in an order where every exchange edge points forward.
  const std::vector<CoalitionId>& topological_order() const { return topo_; }

 private:
  explicit MovementGraph(GameSpec spec) : spec_(std::move(spec)) {}

  GameSpec spec_;
  std::vector<ExchangeEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<Hyperedge> hyper_;
  std::vector<std::vector<int>> hyper_into_;
  std::vector<CoalitionId> topo_;
};

// Every hyperedge into v has at least one unmarked source.
bool undominated(const MovementGraph& g, const MarkingState& m, CoalitionId v);

// Throws IllegalAction.
MarkingState step(const MovementGraph& g, const MarkingState& m, const Action& action);

// Like step, also reporting the vertices that lost their mark.
MarkingState step(const MovementGraph& g, const MarkingState& m, const Action& action,
                  std::vector<CoalitionId>* unmarked);

// Create actions in vertex order, then move actions in edge order.
std::vector<Action> legal_actions(const MovementGraph& g, const MarkingState& m);

struct ReachablePosition {
  CoalitionId vertex = 0;
  std::vector<int> path;  // exchange edge indices from the generator

  friend bool operator==(const ReachablePosition&, const ReachablePosition&) = default;
};

// For every unmarked undominated generator, the vertices reachable along
// exchange edges through unmarked vertices, each undominated once the
// edge's source is treated as marked. Positions are listed in breadth-first
// order and include the generator itself with an empty path.
std::map<CoalitionId, std::vector<ReachablePosition>> reachable_positions(
    const MovementGraph& g, const MarkingState& m);

}  // namespace matchdyn

#endif  // MATCHDYN_MOVEMENT_GRAPH_HPP_
