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

#include "matchdyn/matching.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "matchdyn/errors.hpp"

namespace matchdyn {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(what); }

// Per-matching lookups shared by the scans over candidate edges.
class Scanner {
 public:
  Scanner(const MatchingInstance& inst, const Matching& m)
      : inst_(inst), m_(m), matched_(inst.num_vertices()) {
    for (EdgeId e : m) {
      matched_[inst.edge(e).u].push_back(e);
      matched_[inst.edge(e).v].push_back(e);
    }
  }

  bool accessible(EdgeId e) {
    const MatchingEdge& edge = inst_.edge(e);
    switch (inst_.variant()) {
      case Variant::kSocial:
        return inst_.has_link(edge.u, edge.v);
      case Variant::kLocal:
        return distance_within(edge.u, edge.v, inst_.lookahead());
      default:
        return true;
    }
  }

  std::vector<Move> moves(EdgeId e) {
    std::vector<Move> out;
    if (m_.contains(e) || !accessible(e)) return out;
    const MatchingEdge& edge = inst_.edge(e);
    const bool friendship = inst_.variant() == Variant::kFriendship;
    std::vector<std::optional<EdgeId>> opt_u = options(e, edge.u, edge.v, friendship);
    std::vector<std::optional<EdgeId>> opt_v = options(e, edge.v, edge.u, friendship);
    for (const auto& du : opt_u) {
      for (const auto& dv : opt_v) {
        Move mv{e, {}};
        if (du) mv.dropped.push_back(*du);
        if (dv) mv.dropped.push_back(*dv);
        std::sort(mv.dropped.begin(), mv.dropped.end());
        if (friendship && !perceived_gain(mv)) continue;
        out.push_back(std::move(mv));
      }
    }
    return out;
  }

 private:
  // Choices for endpoint x of e, whose other endpoint is z: nothing (when a
  // slot is free), then current edges by increasing value to x.
  std::vector<std::optional<EdgeId>> options(EdgeId e, VertexId x, VertexId z, bool friendship) {
    std::vector<std::optional<EdgeId>> out;
    const Rational& gain = inst_.utility(e, x);
    const auto& current = matched_[x];
    if (static_cast<int>(current.size()) < inst_.k() && (friendship || gain > 0)) {
      out.emplace_back(std::nullopt);
    }
    std::vector<EdgeId> drops;
    for (EdgeId f : current) {
      if (!friendship && !(inst_.utility(f, x) < gain)) continue;
      if (inst_.variant() == Variant::kConsiderate && protects(e, x) &&
          !considerate_drop(f, x, z)) {
        continue;
      }
      drops.push_back(f);
    }
    std::sort(drops.begin(), drops.end(), [&](EdgeId a, EdgeId b) {
      const Rational& ua = inst_.utility(a, x);
      const Rational& ub = inst_.utility(b, x);
      return ua < ub || (ua == ub && a < b);
    });
    for (EdgeId f : drops) out.emplace_back(f);
    return out;
  }

  bool protects(EdgeId e, VertexId x) const {
    return inst_.considerate_mode() == ConsiderateMode::kSymmetric || inst_.edge(e).u == x;
  }

  // x leaves partner y for z. Not allowed when x and y are linked or when y
  // and z are.
  bool considerate_drop(EdgeId f, VertexId x, VertexId z) const {
    VertexId y = inst_.other(f, x);
    return !inst_.has_link(x, y) && !inst_.has_link(y, z);
  }

  bool perceived_gain(const Move& mv) {
    std::vector<int> ids(m_.begin(), m_.end());
    std::erase_if(ids, [&](EdgeId f) {
      return std::binary_search(mv.dropped.begin(), mv.dropped.end(), f);
    });
    ids.insert(std::lower_bound(ids.begin(), ids.end(), mv.edge), mv.edge);
    Matching next = Matching::from_sorted(std::move(ids));
    const MatchingEdge& edge = inst_.edge(mv.edge);
    for (VertexId x : {edge.u, edge.v}) {
      if (!(perceived_utility(inst_, next, x) > perceived_utility(inst_, m_, x))) return false;
    }
    return true;
  }

  bool distance_within(VertexId a, VertexId b, int limit) {
    auto it = dist_.find(a);
    if (it == dist_.end()) it = dist_.emplace(a, bfs(a, limit)).first;
    return it->second[b] >= 0;
  }

  std::vector<int> bfs(VertexId a, int limit) const {
    std::vector<int> dist(inst_.num_vertices(), -1);
    std::deque<VertexId> queue{a};
    dist[a] = 0;
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      if (dist[x] == limit) continue;
      auto visit = [&](VertexId y) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      };
      for (VertexId y : inst_.link_neighbors(x)) visit(y);
      for (EdgeId f : matched_[x]) visit(inst_.other(f, x));
    }
    return dist;
  }

  const MatchingInstance& inst_;
  const Matching& m_;
  std::vector<std::vector<EdgeId>> matched_;
  std::map<VertexId, std::vector<int>> dist_;
};

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kPlain: return "plain";
    case Variant::kSocial: return "social";
    case Variant::kLocal: return "local";
    case Variant::kConsiderate: return "considerate";
    case Variant::kFriendship: return "friendship";
  }
  return "plain";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::kPlain, Variant::kSocial, Variant::kLocal, Variant::kConsiderate,
                    Variant::kFriendship}) {
    if (variant_name(v) == name) return v;
  }
  throw ValidationError("unknown variant '" + std::string(name) + "'");
}

MatchingInstance::MatchingInstance(Definition definition) : def_(std::move(definition)) {
  const int n = def_.vertices;
  if (n < 0) invalid("vertex count must be non-negative");
  if (def_.k < 1) invalid("k must be at least 1");
  if (def_.lookahead < 1) invalid("lookahead must be at least 1");
  auto check_vertex = [&](VertexId v, const std::string& where) {
    if (v < 0 || v >= n) invalid(where + " references unknown vertex " + std::to_string(v));
  };

  incident_.assign(n, {});
  for (std::size_t e = 0; e < def_.edges.size(); ++e) {
    const MatchingEdge& edge = def_.edges[e];
    const std::string where = "edge " + std::to_string(e);
    check_vertex(edge.u, where);
    check_vertex(edge.v, where);
    if (edge.u == edge.v) invalid(where + " is a loop");
    if (edge.bu < 0 || edge.bv < 0) invalid(where + " has a negative benefit");
    incident_[edge.u].push_back(static_cast<EdgeId>(e));
    incident_[edge.v].push_back(static_cast<EdgeId>(e));
    edge_index_.emplace_back(key(edge.u, edge.v), static_cast<EdgeId>(e));
  }
  std::sort(edge_index_.begin(), edge_index_.end());
  for (std::size_t i = 1; i < edge_index_.size(); ++i) {
    if (edge_index_[i].first == edge_index_[i - 1].first) {
      invalid("edges " + std::to_string(edge_index_[i - 1].second) + " and " +
              std::to_string(edge_index_[i].second) + " join the same vertices");
    }
  }

  for (auto& [a, b] : def_.links) {
    check_vertex(a, "link");
    check_vertex(b, "link");
    if (a == b) invalid("link joins vertex " + std::to_string(a) + " to itself");
    if (a > b) std::swap(a, b);
  }
  std::sort(def_.links.begin(), def_.links.end());
  def_.links.erase(std::unique(def_.links.begin(), def_.links.end()), def_.links.end());
  link_adj_.assign(n, {});
  for (const auto& [a, b] : def_.links) {
    links_.insert(key(a, b));
    link_adj_[a].push_back(b);
    link_adj_[b].push_back(a);
  }
  for (auto& adj : link_adj_) std::sort(adj.begin(), adj.end());

  friends_.assign(n, {});
  for (const AlphaEntry& a : def_.alphas) {
    check_vertex(a.from, "alpha");
    check_vertex(a.to, "alpha");
    if (a.from == a.to) invalid("alpha of vertex " + std::to_string(a.from) + " for itself");
    if (a.value < 0) invalid("alpha values must be non-negative");
    if (a.value > 0) friends_[a.from].emplace_back(a.to, a.value);
  }
  for (auto& list : friends_) {
    std::sort(list.begin(), list.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].first == list[i - 1].first) invalid("alpha entry given twice");
    }
  }

  if (def_.bipartition) {
    if (static_cast<int>(def_.bipartition->size()) != n) {
      invalid("bipartition must list a side for every vertex");
    }
    for (int side : *def_.bipartition) {
      if (side != 0 && side != 1) invalid("bipartition sides must be 0 or 1");
    }
  }
}

std::optional<EdgeId> MatchingInstance::edge_between(VertexId a, VertexId b) const {
  if (a < 0 || b < 0 || a >= def_.vertices || b >= def_.vertices) return std::nullopt;
  auto k = key(a, b);
  auto it = std::lower_bound(edge_index_.begin(), edge_index_.end(),
                             std::pair<std::uint64_t, EdgeId>(k, -1));
  if (it != edge_index_.end() && it->first == k) return it->second;
  return std::nullopt;
}

bool MatchingInstance::correlated() const {
  return std::all_of(def_.edges.begin(), def_.edges.end(),
                     [](const MatchingEdge& e) { return e.correlated(); });
}

Rational MatchingInstance::alpha(VertexId from, VertexId to) const {
  const auto& list = friends_[from];
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [](const auto& entry, VertexId t) { return entry.first < t; });
  if (it != list.end() && it->first == to) return it->second;
  return Rational(0);
}

bool MatchingInstance::symmetric_alpha() const {
  for (VertexId a = 0; a < def_.vertices; ++a) {
    for (const auto& [b, value] : friends_[a]) {
      if (alpha(b, a) != value) return false;
    }
  }
  return true;
}

bool is_feasible(const MatchingInstance& inst, const Matching& m) {
  std::vector<int> degree(inst.num_vertices(), 0);
  for (EdgeId e : m) {
    if (e < 0 || e >= inst.num_edges()) return false;
    if (++degree[inst.edge(e).u] > inst.k() || ++degree[inst.edge(e).v] > inst.k()) return false;
  }
  return true;
}

void require_feasible(const MatchingInstance& inst, const Matching& m) {
  if (!is_feasible(inst, m)) {
    throw InfeasibleStart("matching references unknown edges or exceeds capacity " +
                          std::to_string(inst.k()));
  }
}

Rational benefit(const MatchingInstance& inst, const Matching& m, VertexId v) {
  Rational total = 0;
  for (EdgeId e : inst.incident(v)) {
    if (m.contains(e)) total += inst.utility(e, v);
  }
  return total;
}

Rational perceived_utility(const MatchingInstance& inst, const Matching& m, VertexId v) {
  if (inst.variant() != Variant::kFriendship) {
    throw WrongVariant("perceived utility needs a friendship instance");
  }
  Rational total = benefit(inst, m, v);
  for (const auto& [w, a] : inst.friends(v)) total += a * benefit(inst, m, w);
  return total;
}

std::vector<Move> improving_moves(const MatchingInstance& inst, const Matching& m, EdgeId edge) {
  if (edge < 0 || edge >= inst.num_edges()) return {};
  require_feasible(inst, m);
  return Scanner(inst, m).moves(edge);
}

std::vector<EdgeId> blocking_pairs(const MatchingInstance& inst, const Matching& m) {
  require_feasible(inst, m);
  Scanner scan(inst, m);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (!scan.moves(e).empty()) out.push_back(e);
  }
  return out;
}

bool is_blocking_pair(const MatchingInstance& inst, const Matching& m, EdgeId edge) {
  return !improving_moves(inst, m, edge).empty();
}

bool is_variant_stable(const MatchingInstance& inst, const Matching& m) {
  return blocking_pairs(inst, m).empty();
}

namespace {

Matching perform(const Matching& m, const Move& move) {
  std::vector<int> ids;
  ids.reserve(m.size() + 1);
  for (EdgeId f : m) {
    if (!std::binary_search(move.dropped.begin(), move.dropped.end(), f)) ids.push_back(f);
  }
  ids.insert(std::lower_bound(ids.begin(), ids.end(), move.edge), move.edge);
  return Matching::from_sorted(std::move(ids));
}

}  // namespace

Matching resolve_pair(const MatchingInstance& inst, const Matching& m, EdgeId edge) {
  std::vector<Move> moves = improving_moves(inst, m, edge);
  if (moves.empty()) throw NotBlocking("edge " + std::to_string(edge) + " is not blocking");
  return perform(m, moves.front());
}

Matching apply_move(const MatchingInstance& inst, const Matching& m, const Move& move) {
  Move normalized = move;
  std::sort(normalized.dropped.begin(), normalized.dropped.end());
  std::vector<Move> moves = improving_moves(inst, m, move.edge);
  if (std::find(moves.begin(), moves.end(), normalized) == moves.end()) {
    throw NotBlocking("edge " + std::to_string(move.edge) +
                      " cannot be added with the given drops");
  }
  return perform(m, normalized);
}

std::optional<int> link_distance(const MatchingInstance& inst, const Matching& m, VertexId a,
                                 VertexId b, int limit) {
  std::vector<std::vector<VertexId>> matched(inst.num_vertices());
  for (EdgeId e : m) {
    matched[inst.edge(e).u].push_back(inst.edge(e).v);
    matched[inst.edge(e).v].push_back(inst.edge(e).u);
  }
  std::vector<int> dist(inst.num_vertices(), -1);
  std::deque<VertexId> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    if (x == b) return dist[x];
    if (dist[x] == limit) continue;
    auto visit = [&](VertexId y) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    };
    for (VertexId y : inst.link_neighbors(x)) visit(y);
    for (VertexId y : matched[x]) visit(y);
  }
  return std::nullopt;
}

Matching replay(const MatchingInstance& inst, const Matching& m0, const MatchingTrace& trace) {
  if (!is_feasible(inst, m0)) throw InvalidTrace(0, "start matching is infeasible");
  Matching m = m0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    try {
      m = apply_move(inst, m, trace.steps[i]);
    } catch (const NotBlocking& e) {
      throw InvalidTrace(i, e.what());
    }
  }
  return m;
}

}  // namespace matchdyn
