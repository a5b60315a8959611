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

#include "matchdyn/movement_graph.hpp"

#include <algorithm>
#include <tuple>

namespace matchdyn {
namespace {

bool marked_or(const MarkingState& m, CoalitionId v, CoalitionId extra) {
  return v == extra || m.marked.contains(v);
}

// Domination of v under the marking plus, optionally, one extra mark.
bool dominated_with(const MovementGraph& g, const MarkingState& m, CoalitionId v,
                    CoalitionId extra) {
  for (int h : g.stored_hyperedges_into(v)) {
    const auto& sources = g.stored_hyperedges()[h].sources;
    if (std::all_of(sources.begin(), sources.end(),
                    [&](CoalitionId u) { return marked_or(m, u, extra); })) {
      return true;
    }
  }
  const GameSpec& spec = g.spec();
  if (extra >= 0 && spec.weight_dominates(extra, v)) return true;
  for (CoalitionId u : m.marked) {
    if (spec.weight_dominates(u, v)) return true;
  }
  return false;
}

}  // namespace

MovementGraph MovementGraph::build(const GameSpec& spec) {
  if (!spec.include_weight_domination()) {
    throw InconsistentSpec("movement graph requires weight domination");
  }
  ConsistencyReport report = check_consistency(spec);
  if (!report.consistent()) {
    throw InconsistentSpec("movement graph requires consistent rules; " +
                           report.violations.front().describe());
  }
  MovementGraph g(spec);
  const int m = spec.num_coalitions();
  const auto gen = spec.generation_rules();
  for (std::size_t r = 0; r < gen.size(); ++r) {
    CoalitionId from = gen[r].precondition.front();
    CoalitionId to = gen[r].target;
    if (spec.weight_rank(from) < spec.weight_rank(to)) {
      g.edges_.push_back({from, to, static_cast<int>(r)});
    }
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const ExchangeEdge& a, const ExchangeEdge& b) {
    return std::tie(a.from, a.to, a.rule) < std::tie(b.from, b.to, b.rule);
  });
  g.out_.assign(m, {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    g.out_[g.edges_[e].from].push_back(static_cast<int>(e));
  }

  const auto dom = spec.domination_rules();
  g.hyper_into_.assign(m, {});
  for (std::size_t r = 0; r < dom.size(); ++r) {
    g.hyper_into_[dom[r].target].push_back(static_cast<int>(g.hyper_.size()));
    g.hyper_.push_back({dom[r].precondition, dom[r].target, static_cast<int>(r)});
  }

  g.topo_.resize(m);
  for (int v = 0; v < m; ++v) g.topo_[v] = v;
  std::sort(g.topo_.begin(), g.topo_.end(), [&](CoalitionId a, CoalitionId b) {
    return std::pair(spec.weight_rank(a), a) < std::pair(spec.weight_rank(b), b);
  });
  return g;
}

std::vector<Hyperedge> MovementGraph::all_hyperedges() const {
  std::vector<Hyperedge> out = hyper_;
  for (CoalitionId a = 0; a < num_vertices(); ++a) {
    for (CoalitionId b = 0; b < num_vertices(); ++b) {
      if (spec_.weight_dominates(a, b)) out.push_back({{a}, b, -1});
    }
  }
  return out;
}

bool undominated(const MovementGraph& g, const MarkingState& m, CoalitionId v) {
  return !dominated_with(g, m, v, -1);
}

MarkingState step(const MovementGraph& g, const MarkingState& m, const Action& action) {
  return step(g, m, action, nullptr);
}

MarkingState step(const MovementGraph& g, const MarkingState& m, const Action& action,
                  std::vector<CoalitionId>* unmarked) {
  using Reason = IllegalAction::Reason;
  CoalitionId target = action.vertex;
  CoalitionId source = -1;
  if (action.kind == Action::Kind::kCreateAt) {
    if (target < 0 || target >= g.num_vertices() || !g.is_generator(target)) {
      throw IllegalAction(Reason::kNotGenerator,
                          "vertex " + std::to_string(target) + " is not a generator");
    }
  } else {
    if (action.edge < 0 || action.edge >= static_cast<int>(g.exchange_edges().size())) {
      throw IllegalAction(Reason::kUnknownEdge,
                          "unknown exchange edge " + std::to_string(action.edge));
    }
    const ExchangeEdge& e = g.exchange_edges()[action.edge];
    if (target != e.to) {
      throw IllegalAction(Reason::kUnknownEdge, "exchange edge " + std::to_string(action.edge) +
                                                    " does not lead to vertex " +
                                                    std::to_string(target));
    }
    source = e.from;
    target = e.to;
    if (!m.marked.contains(source)) {
      throw IllegalAction(Reason::kSourceUnmarked,
                          "source vertex " + std::to_string(source) + " is not marked");
    }
  }
  if (m.marked.contains(target)) {
    throw IllegalAction(Reason::kMarked, "vertex " + std::to_string(target) + " is marked");
  }
  if (!undominated(g, m, target)) {
    throw IllegalAction(Reason::kDominated,
                        "vertex " + std::to_string(target) + " is dominated");
  }

  MarkingState with_target = m;
  with_target.marked.insert(target);
  std::vector<int> kept;
  std::vector<CoalitionId> lost;
  for (CoalitionId u : with_target.marked) {
    bool drop = u != target && (u == source || dominated_with(g, with_target, u, -1));
    (drop ? lost : kept).push_back(u);
  }
  if (unmarked) *unmarked = std::move(lost);
  return {CoalitionStructure::from_sorted(std::move(kept))};
}

std::vector<Action> legal_actions(const MovementGraph& g, const MarkingState& m) {
  std::vector<Action> out;
  for (CoalitionId v = 0; v < g.num_vertices(); ++v) {
    if (g.is_generator(v) && !m.marked.contains(v) && undominated(g, m, v)) {
      out.push_back(Action::create_at(v));
    }
  }
  const auto& edges = g.exchange_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (m.marked.contains(edges[e].from) && !m.marked.contains(edges[e].to) &&
        undominated(g, m, edges[e].to)) {
      out.push_back(Action::move_along(static_cast<int>(e), edges[e].to));
    }
  }
  return out;
}

std::map<CoalitionId, std::vector<ReachablePosition>> reachable_positions(
    const MovementGraph& g, const MarkingState& m) {
  std::map<CoalitionId, std::vector<ReachablePosition>> out;
  const int n = g.num_vertices();
  std::vector<int> seen(n, -1);
  for (CoalitionId gen = 0; gen < n; ++gen) {
    if (!g.is_generator(gen) || m.marked.contains(gen) || !undominated(g, m, gen)) continue;
    std::vector<ReachablePosition> positions{{gen, {}}};
    seen[gen] = gen;
    for (std::size_t head = 0; head < positions.size(); ++head) {
      CoalitionId x = positions[head].vertex;
      for (int e : g.out_edges(x)) {
        CoalitionId y = g.exchange_edges()[e].to;
        if (seen[y] == gen || m.marked.contains(y) || dominated_with(g, m, y, x)) continue;
        seen[y] = gen;
        ReachablePosition next{y, positions[head].path};
        next.path.push_back(e);
        positions.push_back(std::move(next));
      }
    }
    out.emplace(gen, std::move(positions));
  }
  return out;
}

}  // namespace matchdyn
