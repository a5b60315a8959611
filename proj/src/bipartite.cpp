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

#include "matchdyn/bipartite.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "matchdyn/errors.hpp"

namespace matchdyn {

MatchingInstance with_preferences(const MatchingInstance& inst, const PreferenceTable& table) {
  MatchingInstance::Definition def = inst.definition();
  for (const auto& [x, groups] : table.groups) {
    if (x < 0 || x >= inst.num_vertices()) {
      throw ValidationError("preferences for unknown vertex " + std::to_string(x));
    }
    for (EdgeId e : inst.incident(x)) {
      (def.edges[e].u == x ? def.edges[e].bu : def.edges[e].bv) = 0;
    }
    std::set<EdgeId> listed;
    const int r = static_cast<int>(groups.size());
    for (int t = 0; t < r; ++t) {
      for (EdgeId e : groups[t]) {
        if (e < 0 || e >= inst.num_edges() || (inst.edge(e).u != x && inst.edge(e).v != x)) {
          throw ValidationError("vertex " + std::to_string(x) + " ranks edge " +
                                std::to_string(e) + " which is not incident to it");
        }
        if (!listed.insert(e).second) {
          throw ValidationError("vertex " + std::to_string(x) + " ranks edge " +
                                std::to_string(e) + " twice");
        }
        (def.edges[e].u == x ? def.edges[e].bu : def.edges[e].bv) = Rational(r - t);
      }
    }
  }
  return MatchingInstance(std::move(def));
}

void check_two_phase_preconditions(const MatchingInstance& inst) {
  if (inst.k() != 1) throw PreconditionViolated("two-phase algorithm needs k = 1");
  const Variant variant = inst.variant();
  if (variant == Variant::kLocal) {
    throw PreconditionViolated("two-phase algorithm does not cover local instances");
  }
  if (!inst.bipartition()) throw PreconditionViolated("instance has no bipartition");
  const std::vector<int>& side = *inst.bipartition();
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (side[inst.edge(e).u] == side[inst.edge(e).v]) {
      throw PreconditionViolated("non-bipartite: edge " + std::to_string(e) +
                                 " joins two vertices of the same side");
    }
  }
  if (variant == Variant::kConsiderate) {
    for (const auto& [a, b] : inst.links()) {
      if (side[a] == 1 && side[b] == 1) {
        throw PreconditionViolated("link between W vertices " + std::to_string(a) + " and " +
                                   std::to_string(b));
      }
    }
  }
  if (variant == Variant::kFriendship) {
    for (VertexId a = 0; a < inst.num_vertices(); ++a) {
      for (const auto& [b, value] : inst.friends(a)) {
        if (side[a] != 0 || side[b] != 0) {
          throw PreconditionViolated("positive alpha between " + std::to_string(a) + " and " +
                                     std::to_string(b) + " outside U");
        }
      }
    }
  }
}

TwoPhaseResult two_phase_converge(const MatchingInstance& inst, const Matching& m0) {
  check_two_phase_preconditions(inst);
  require_feasible(inst, m0);
  const std::vector<int>& side = *inst.bipartition();
  const auto num_w = static_cast<std::size_t>(std::count(side.begin(), side.end(), 1));
  TwoPhaseResult result;
  result.bound = 2 * (side.size() - num_w) * num_w;

  auto w_of = [&](EdgeId e) { return side[inst.edge(e).u] == 1 ? inst.edge(e).u : inst.edge(e).v; };
  auto u_of = [&](EdgeId e) { return side[inst.edge(e).u] == 0 ? inst.edge(e).u : inst.edge(e).v; };
  auto matched = [&](const Matching& m, VertexId x) {
    auto inc = inst.incident(x);
    return std::any_of(inc.begin(), inc.end(), [&](EdgeId f) { return m.contains(f); });
  };
  auto resolve = [&](Matching& m, EdgeId e) {
    if (result.trace.size() > 4 * result.bound + 16) {
      throw std::logic_error("two-phase run exceeded its step guard");
    }
    result.trace.steps.push_back(improving_moves(inst, m, e).front());
    m = resolve_pair(inst, m, e);
  };

  Matching m = m0;
  while (true) {
    std::optional<EdgeId> pick;
    for (EdgeId e : blocking_pairs(inst, m)) {
      if (!matched(m, w_of(e))) continue;
      if (!pick || std::pair(w_of(e), u_of(e)) < std::pair(w_of(*pick), u_of(*pick))) pick = e;
    }
    if (!pick) break;
    resolve(m, *pick);
  }
  result.phase1_steps = result.trace.size();

  const bool friendship = inst.variant() == Variant::kFriendship;
  while (true) {
    std::vector<EdgeId> blocking = blocking_pairs(inst, m);
    if (blocking.empty()) break;
    VertexId w = w_of(*std::min_element(blocking.begin(), blocking.end(), [&](EdgeId a, EdgeId b) {
      return w_of(a) < w_of(b);
    }));
    std::optional<EdgeId> best;
    Rational best_value;
    for (EdgeId e : blocking) {
      if (w_of(e) != w) continue;
      Rational value = friendship ? perceived_utility(inst, resolve_pair(inst, m, e), w)
                                  : inst.utility(e, w);
      if (!best || value > best_value || (value == best_value && u_of(e) < u_of(*best))) {
        best = e;
        best_value = value;
      }
    }
    resolve(m, *best);
  }
  result.phase2_steps = result.trace.size() - result.phase1_steps;
  result.final_matching = std::move(m);
  return result;
}

}  // namespace matchdyn
