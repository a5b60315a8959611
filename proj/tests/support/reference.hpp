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

// Brute-force reference implementations used to cross-check the library.
// They work from the raw definitions and share no code with src/.

#ifndef MATCHDYN_TESTS_SUPPORT_REFERENCE_HPP_
#define MATCHDYN_TESTS_SUPPORT_REFERENCE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "matchdyn/game.hpp"
#include "matchdyn/matching.hpp"

namespace reference {

using matchdyn::GameSpec;
using matchdyn::MatchingInstance;
using matchdyn::Rational;
using State = std::vector<int>;

inline bool contains(const State& s, int x) { return std::find(s.begin(), s.end(), x) != s.end(); }

inline bool subset(const std::vector<int>& a, const State& s) {
  return std::all_of(a.begin(), a.end(), [&](int x) { return contains(s, x); });
}

inline const matchdyn::Coalition& coalition(const GameSpec::Definition& d, int id) {
  for (const auto& c : d.coalitions) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("coalition");
}

inline bool share_agent(const GameSpec::Definition& d, int a, int b) {
  const auto& x = coalition(d, a).members;
  const auto& y = coalition(d, b).members;
  for (int p : x) {
    if (std::find(y.begin(), y.end(), p) != y.end()) return true;
  }
  return false;
}

inline bool feasible(const GameSpec::Definition& d, const State& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (share_agent(d, s[i], s[j])) return false;
    }
  }
  return true;
}

inline bool dominated(const GameSpec::Definition& d, const State& s, int c) {
  for (const auto& r : d.domination_rules) {
    if (r.target == c && subset(r.precondition, s)) return true;
  }
  if (d.include_weight_domination) {
    for (int x : s) {
      if (x != c && share_agent(d, x, c) && coalition(d, x).weight >= coalition(d, c).weight) {
        return true;
      }
    }
  }
  return false;
}

inline bool candidate(const GameSpec::Definition& d, const State& s, int c) {
  if (contains(s, c)) return false;
  if (contains(d.self_generating, c)) return true;
  for (const auto& r : d.generation_rules) {
    if (r.target == c && subset(r.precondition, s)) return true;
  }
  return false;
}

inline std::vector<int> blocking(const GameSpec::Definition& d, const State& s) {
  std::vector<int> out;
  for (const auto& c : d.coalitions) {
    if (candidate(d, s, c.id) && !dominated(d, s, c.id)) out.push_back(c.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline State resolve(const GameSpec::Definition& d, const State& s, int c) {
  State with = s;
  with.push_back(c);
  State out{c};
  for (int x : s) {
    bool gone = false;
    for (const auto& r : d.domination_rules) {
      if (r.target == x && subset(r.precondition, with)) gone = true;
    }
    if (share_agent(d, x, c)) {
      gone = gone || !d.include_weight_domination ||
             coalition(d, c).weight >= coalition(d, x).weight;
    }
    if (!gone) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Graph {
  std::set<State> states;
  std::set<std::tuple<State, int, State>> edges;
};

// Depth-first closure using an explicit stack.
template <typename Next>
Graph depth_first(const State& s0, Next next) {
  Graph g;
  std::vector<State> stack{s0};
  g.states.insert(s0);
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (const auto& [label, t] : next(s)) {
      g.edges.emplace(s, label, t);
      if (g.states.insert(t).second) stack.push_back(t);
    }
  }
  return g;
}

inline std::vector<std::pair<int, State>> game_successors(const GameSpec::Definition& d,
                                                          const State& s) {
  std::vector<std::pair<int, State>> out;
  for (int c : blocking(d, s)) out.emplace_back(c, resolve(d, s, c));
  return out;
}

inline Graph explore_game(const GameSpec::Definition& d, const State& s0) {
  return depth_first(s0, [&](const State& s) { return game_successors(d, s); });
}

// Matching side.

inline Rational alpha(const MatchingInstance::Definition& d, int from, int to) {
  Rational a = 0;
  for (const auto& e : d.alphas) {
    if (e.from == from && e.to == to) a = e.value;
  }
  return a;
}

inline Rational gain(const MatchingInstance::Definition& d, int e, int x) {
  return d.edges[e].u == x ? d.edges[e].bu : d.edges[e].bv;
}

inline bool touches(const MatchingInstance::Definition& d, int e, int x) {
  return d.edges[e].u == x || d.edges[e].v == x;
}

inline Rational total(const MatchingInstance::Definition& d, const State& m, int x) {
  Rational b = 0;
  for (int e : m) {
    if (touches(d, e, x)) b += gain(d, e, x);
  }
  return b;
}

inline Rational perceived(const MatchingInstance::Definition& d, const State& m, int x) {
  Rational p = total(d, m, x);
  for (int y = 0; y < d.vertices; ++y) {
    if (y != x) p += alpha(d, x, y) * total(d, m, y);
  }
  return p;
}

inline bool linked(const MatchingInstance::Definition& d, int a, int b) {
  for (const auto& [p, q] : d.links) {
    if ((p == a && q == b) || (p == b && q == a)) return true;
  }
  return false;
}

// Floyd-Warshall over links plus matched edges.
inline int hops(const MatchingInstance::Definition& d, const State& m, int a, int b) {
  const int n = d.vertices;
  const int inf = 1 << 20;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) dist[i][i] = 0;
  for (const auto& [p, q] : d.links) dist[p][q] = dist[q][p] = 1;
  for (int e : m) dist[d.edges[e].u][d.edges[e].v] = dist[d.edges[e].v][d.edges[e].u] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
    }
  }
  return dist[a][b];
}

inline int degree(const MatchingInstance::Definition& d, const State& m, int x) {
  int deg = 0;
  for (int e : m) deg += touches(d, e, x) ? 1 : 0;
  return deg;
}

// Every matching reachable by resolving edge e as a blocking pair.
inline std::set<State> moves(const MatchingInstance::Definition& d, const State& m, int e) {
  using matchdyn::Variant;
  std::set<State> out;
  if (contains(m, e)) return out;
  const int u = d.edges[e].u;
  const int v = d.edges[e].v;
  if (d.variant == Variant::kSocial && !linked(d, u, v)) return out;
  if (d.variant == Variant::kLocal && hops(d, m, u, v) > d.lookahead) return out;
  auto options = [&](int x) {
    std::vector<std::optional<int>> opts;
    if (degree(d, m, x) < d.k) opts.push_back(std::nullopt);
    for (int f : m) {
      if (touches(d, f, x)) opts.push_back(f);
    }
    return opts;
  };
  auto considerate_ok = [&](int x, std::optional<int> f, int z) {
    if (!f) return true;
    int y = d.edges[*f].u == x ? d.edges[*f].v : d.edges[*f].u;
    return !linked(d, x, y) && !linked(d, y, z);
  };
  auto plain_ok = [&](int x, std::optional<int> f) {
    return f ? gain(d, *f, x) < gain(d, e, x) : gain(d, e, x) > 0;
  };
  for (auto du : options(u)) {
    for (auto dv : options(v)) {
      State next;
      for (int f : m) {
        if (f != du.value_or(-1) && f != dv.value_or(-1)) next.push_back(f);
      }
      next.push_back(e);
      std::sort(next.begin(), next.end());
      if (d.variant == Variant::kConsiderate) {
        if (!considerate_ok(u, du, v)) continue;
        if (d.considerate_mode == matchdyn::ConsiderateMode::kSymmetric &&
            !considerate_ok(v, dv, u)) {
          continue;
        }
      }
      if (d.variant == Variant::kFriendship) {
        if (perceived(d, next, u) <= perceived(d, m, u)) continue;
        if (perceived(d, next, v) <= perceived(d, m, v)) continue;
      } else if (!plain_ok(u, du) || !plain_ok(v, dv)) {
        continue;
      }
      out.insert(next);
    }
  }
  return out;
}

inline std::vector<int> blocking_pairs(const MatchingInstance::Definition& d, const State& m) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    if (!moves(d, m, e).empty()) out.push_back(e);
  }
  return out;
}

inline std::vector<std::pair<int, State>> matching_successors(
    const MatchingInstance::Definition& d, const State& m) {
  std::vector<std::pair<int, State>> out;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    for (const State& t : moves(d, m, e)) out.emplace_back(e, t);
  }
  return out;
}

inline Graph explore_matching(const MatchingInstance::Definition& d, const State& m0) {
  return depth_first(m0, [&](const State& m) { return matching_successors(d, m); });
}

}  // namespace reference

#endif  // MATCHDYN_TESTS_SUPPORT_REFERENCE_HPP_
