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

// Exhaustive exploration of improvement dynamics for small games and
// matching instances.

#ifndef MATCHDYN_ORACLE_HPP_
#define MATCHDYN_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "matchdyn/errors.hpp"
#include "matchdyn/game.hpp"
#include "matchdyn/id_set.hpp"
#include "matchdyn/matching.hpp"

namespace matchdyn {

// Sorted coalition or edge ids.
using StateKey = std::vector<int>;

struct Successor {
  int label = 0;  // inserted coalition or added edge
  StateKey next;
};

class Dynamics {
 public:
  virtual ~Dynamics() = default;
  // Distinct successors, ordered by label and then by state.
  virtual std::vector<Successor> successors(const StateKey& s) const = 0;
  // Every feasible state; throws TooLarge beyond `limit` states.
  virtual std::vector<StateKey> feasible_states(std::size_t limit) const = 0;
  virtual bool is_feasible(const StateKey& s) const = 0;
};

class GameDynamics : public Dynamics {
 public:
  explicit GameDynamics(const GameSpec& spec) : spec_(spec) {}
  std::vector<Successor> successors(const StateKey& s) const override;
  std::vector<StateKey> feasible_states(std::size_t limit) const override;
  bool is_feasible(const StateKey& s) const override;

 private:
  const GameSpec& spec_;
};

// Direct matching semantics; with k > 1 every choice of dropped edges is a
// separate transition.
class MatchingDynamics : public Dynamics {
 public:
  explicit MatchingDynamics(const MatchingInstance& inst) : inst_(inst) {}
  std::vector<Successor> successors(const StateKey& s) const override;
  std::vector<StateKey> feasible_states(std::size_t limit) const override;
  bool is_feasible(const StateKey& s) const override;

 private:
  const MatchingInstance& inst_;
};

struct TransitionEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  int label = 0;

  friend bool operator==(const TransitionEdge&, const TransitionEdge&) = default;
};

struct TransitionGraph {
  std::vector<StateKey> states;  // breadth-first discovery order, start first
  std::vector<TransitionEdge> edges;
  bool overflow = false;

  std::optional<std::size_t> index_of(const StateKey& s) const;
  std::vector<std::size_t> sinks() const;
  std::vector<std::size_t> out_degree() const;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t budget, TransitionGraph partial)
      : Error("state budget of " + std::to_string(budget) + " exceeded"),
        partial_(std::move(partial)) {}
  const TransitionGraph& graph() const { return partial_; }

 private:
  TransitionGraph partial_;
};

// MATCHDYN_BUDGET when set to a positive integer, else one million.
std::size_t default_budget();

struct ExploreOptions {
  std::size_t node_budget = default_budget();
  unsigned workers = 1;
};

// Breadth-first closure of s0. Throws BudgetExceeded carrying the explored
// part, with overflow set, when more than node_budget states are reachable.
TransitionGraph explore(const Dynamics& dyn, const StateKey& s0, const ExploreOptions& options = {});

struct Transition {
  int label = 0;
  StateKey next;
};

struct Reachability {
  bool reachable = false;
  std::vector<Transition> witness;  // a shortest path when reachable
  std::optional<std::size_t> shortest_length;
};

// Throws BudgetExceeded when the search exhausts the budget undecided.
Reachability reachable(const Dynamics& dyn, const StateKey& s0, const StateKey& target,
                       const ExploreOptions& options = {});

// A shortest path to any state without successors.
Reachability shortest_to_stable(const Dynamics& dyn, const StateKey& s0,
                                const ExploreOptions& options = {});

// All feasible states without successors. Throws TooLarge when there are
// more than `limit` feasible states.
std::vector<StateKey> enumerate_stable(const Dynamics& dyn, std::size_t limit = 1u << 20);

// Witness conversions; they recompute the deleted sets and generation rules.
ImprovementTrace to_trace(const GameSpec& spec, const StateKey& s0,
                          const std::vector<Transition>& path);
MatchingTrace to_trace(const MatchingInstance& inst, const StateKey& m0,
                       const std::vector<Transition>& path);

}  // namespace matchdyn

#endif  // MATCHDYN_ORACLE_HPP_
