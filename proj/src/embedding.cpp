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

#include "matchdyn/embedding.hpp"

#include <set>

#include "matchdyn/errors.hpp"

namespace matchdyn {
namespace {

using RuleSet = std::set<std::pair<std::vector<CoalitionId>, CoalitionId>>;

void add_rule(RuleSet& rules, std::vector<CoalitionId> pre, CoalitionId target) {
  std::sort(pre.begin(), pre.end());
  pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
  rules.emplace(std::move(pre), target);
}

std::vector<Rule> to_rules(const RuleSet& rules) {
  std::vector<Rule> out;
  out.reserve(rules.size());
  for (const auto& [pre, target] : rules) out.push_back({pre, target});
  return out;
}

class Builder {
 public:
  Builder(const MatchingInstance& inst, Embedding& out) : inst_(inst), out_(out), k_(inst.k()) {}

  // Coalitions of edge f in which vertex x sits on copy c.
  std::vector<CoalitionId> at_copy(EdgeId f, VertexId x, int c) const {
    std::vector<CoalitionId> ids;
    for (int other = 0; other < k_; ++other) {
      ids.push_back(inst_.edge(f).u == x ? out_.coalition(f, c, other)
                                         : out_.coalition(f, other, c));
    }
    return ids;
  }

  // Copies of x used by coalition c of an edge incident to x.
  int copy_of(CoalitionId c, VertexId x) const {
    Embedding::Slot s = out_.slot(c);
    return inst_.edge(s.edge).u == x ? s.i : s.j;
  }

  // Coalitions of e, all copies.
  std::vector<CoalitionId> all_of(EdgeId e) const {
    std::vector<CoalitionId> ids;
    for (int i = 0; i < k_; ++i) {
      for (int j = 0; j < k_; ++j) ids.push_back(out_.coalition(e, i, j));
    }
    return ids;
  }

 private:
  const MatchingInstance& inst_;
  Embedding& out_;
  int k_;
};

std::vector<int> link_distances(const MatchingInstance& inst, VertexId a, int limit) {
  std::vector<int> dist(inst.num_vertices(), -1);
  std::vector<VertexId> frontier{a};
  dist[a] = 0;
  for (int d = 1; d <= limit && !frontier.empty(); ++d) {
    std::vector<VertexId> next;
    for (VertexId x : frontier) {
      for (VertexId y : inst.link_neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = d;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace

CoalitionStructure Embedding::state_map(const MatchingInstance& inst, const Matching& m) const {
  require_feasible(inst, m);
  std::vector<int> used(static_cast<std::size_t>(vertices) * k, 0);
  auto take = [&](VertexId v) {
    for (int c = 0; c < k; ++c) {
      if (!used[v * k + c]) {
        used[v * k + c] = 1;
        return c;
      }
    }
    throw InfeasibleStart("vertex " + std::to_string(v) + " exceeds its capacity");
  };
  std::vector<int> ids;
  for (EdgeId e : m) {
    int i = take(inst.edge(e).u);
    int j = take(inst.edge(e).v);
    ids.push_back(coalition(e, i, j));
  }
  return CoalitionStructure(std::move(ids));
}

Matching Embedding::project(const CoalitionStructure& s) const {
  std::vector<int> ids;
  for (CoalitionId c : s) ids.push_back(slot(c).edge);
  return Matching(std::move(ids));
}

Embedding embed(const MatchingInstance& inst) {
  const Variant variant = inst.variant();
  const int n = inst.num_vertices();
  const int k = inst.k();
  const int num_edges = inst.num_edges();
  if (!inst.correlated()) throw UnsupportedEmbedding("embedding needs correlated benefits");
  for (const MatchingEdge& edge : inst.edges()) {
    if (edge.bu == 0) throw UnsupportedEmbedding("embedding needs positive benefits");
  }
  if (variant == Variant::kLocal && k > 1) {
    throw UnsupportedEmbedding("local instances embed only with one partner per vertex");
  }
  if (variant == Variant::kLocal && inst.lookahead() > 3) {
    throw UnsupportedEmbedding("local instances embed only with lookahead at most 3");
  }
  if (variant == Variant::kFriendship && !inst.symmetric_alpha()) {
    throw UnsupportedEmbedding("friendship embedding needs symmetric alpha");
  }

  GameSpec::Definition def;
  def.agents = k == 1 ? n : n * k + num_edges;
  Embedding proto{GameSpec(GameSpec::Definition{}), n, k, true};
  Builder build(inst, proto);

  auto weight = [&](EdgeId e) {
    const MatchingEdge& edge = inst.edge(e);
    if (variant != Variant::kFriendship) return edge.bu;
    return Rational(edge.bu * (1 + inst.alpha(edge.u, edge.v)));
  };
  for (EdgeId e = 0; e < num_edges; ++e) {
    const MatchingEdge& edge = inst.edge(e);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        std::vector<AgentId> members;
        if (k == 1) {
          members = {edge.u, edge.v};
        } else {
          members = {edge.u * k + i, edge.v * k + j, n * k + e};
        }
        def.coalitions.push_back({proto.coalition(e, i, j), std::move(members), weight(e)});
      }
    }
  }

  std::vector<std::vector<int>> dist;
  if (variant == Variant::kLocal) {
    for (VertexId v = 0; v < n; ++v) dist.push_back(link_distances(inst, v, inst.lookahead()));
  }
  auto within = [&](VertexId a, VertexId b, int limit) {
    return dist[a][b] >= 0 && dist[a][b] <= limit;
  };

  for (EdgeId e = 0; e < num_edges; ++e) {
    const MatchingEdge& edge = inst.edge(e);
    bool generates = true;
    if (variant == Variant::kSocial) generates = inst.has_link(edge.u, edge.v);
    if (variant == Variant::kLocal) generates = within(edge.u, edge.v, inst.lookahead());
    if (!generates) continue;
    for (CoalitionId c : build.all_of(e)) def.self_generating.push_back(c);
  }

  RuleSet generation;
  if (variant == Variant::kLocal && inst.lookahead() >= 2) {
    const int reach = inst.lookahead() - 1;
    for (EdgeId e = 0; e < num_edges; ++e) {
      const MatchingEdge& edge = inst.edge(e);
      for (auto [x, t] : {std::pair(edge.u, edge.v), std::pair(edge.v, edge.u)}) {
        // x keeps a partner a whose links reach t.
        for (EdgeId f : inst.incident(x)) {
          VertexId a = inst.other(f, x);
          if (f != e && within(a, t, reach)) add_rule(generation, {f}, e);
        }
      }
      if (inst.lookahead() < 3) continue;
      for (auto [x, t] : {std::pair(edge.u, edge.v), std::pair(edge.v, edge.u)}) {
        for (VertexId a : inst.link_neighbors(x)) {
          if (a == t) continue;
          // x linked to a, a matched to b, b linked to t.
          for (EdgeId f : inst.incident(a)) {
            VertexId b = inst.other(f, a);
            if (b != x && b != t && inst.has_link(b, t)) add_rule(generation, {f}, e);
          }
        }
        // x matched to a, a linked to b, b matched to t.
        for (EdgeId f : inst.incident(x)) {
          VertexId a = inst.other(f, x);
          if (f == e) continue;
          for (EdgeId g : inst.incident(t)) {
            VertexId b = inst.other(g, t);
            if (g == e || b == x || a == b) continue;
            if (inst.has_link(a, b)) add_rule(generation, {f, g}, e);
          }
        }
      }
    }
  }

  RuleSet domination;
  if (variant == Variant::kConsiderate) {
    for (EdgeId e = 0; e < num_edges; ++e) {
      const MatchingEdge& edge = inst.edge(e);
      for (auto [x, z] : {std::pair(edge.u, edge.v), std::pair(edge.v, edge.u)}) {
        if (inst.considerate_mode() == ConsiderateMode::kProposerOnly && x != edge.u) continue;
        for (EdgeId f : inst.incident(x)) {
          if (f == e) continue;
          VertexId y = inst.other(f, x);
          if (!inst.has_link(x, y) && !inst.has_link(y, z)) continue;
          for (CoalitionId target : build.all_of(e)) {
            int c = build.copy_of(target, x);
            for (CoalitionId pre : build.at_copy(f, x, c)) add_rule(domination, {pre}, target);
          }
        }
      }
    }
  }
  if (variant == Variant::kFriendship) {
    for (EdgeId e = 0; e < num_edges; ++e) {
      const Rational& be = inst.edge(e).bu;
      const MatchingEdge& edge = inst.edge(e);
      // x gives up f = {x,v}; t is the endpoint whose perceived gain is tested.
      for (auto [x, t] : {std::pair(edge.u, edge.v), std::pair(edge.v, edge.u)}) {
        const Rational gain = be + inst.alpha(t, x) * be;
        for (EdgeId f : inst.incident(x)) {
          if (f == e) continue;
          VertexId v = inst.other(f, x);
          const Rational& bf = inst.edge(f).bu;
          const Rational lost_f = inst.alpha(t, v) * bf + inst.alpha(t, x) * bf;
          if (lost_f >= gain) {
            for (CoalitionId target : build.all_of(e)) {
              int c = build.copy_of(target, x);
              for (CoalitionId pre : build.at_copy(f, x, c)) add_rule(domination, {pre}, target);
            }
          }
          for (EdgeId g : inst.incident(t)) {
            if (g == e) continue;
            VertexId u2 = inst.other(g, t);
            if (u2 == x) continue;
            const Rational& bg = inst.edge(g).bu;
            if (bg + inst.alpha(t, u2) * bg + lost_f < gain) continue;
            for (CoalitionId target : build.all_of(e)) {
              int cx = build.copy_of(target, x);
              int ct = build.copy_of(target, t);
              for (CoalitionId pf : build.at_copy(f, x, cx)) {
                for (CoalitionId pg : build.at_copy(g, t, ct)) {
                  add_rule(domination, {pf, pg}, target);
                }
              }
            }
          }
        }
      }
    }
  }

  def.generation_rules = to_rules(generation);
  def.domination_rules = to_rules(domination);
  Embedding out{GameSpec(std::move(def)), n, k, true};
  out.consistent = check_consistency(out.spec).consistent();
  return out;
}

}  // namespace matchdyn
