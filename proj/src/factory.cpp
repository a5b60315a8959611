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

#include "matchdyn/factory.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "matchdyn/errors.hpp"
#include "matchdyn/random.hpp"

namespace matchdyn {
namespace {

Coalition make_coalition(CoalitionId id, std::vector<AgentId> members, Rational weight) {
  return {id, std::move(members), std::move(weight)};
}

bool disjoint(const std::vector<AgentId>& a, const std::vector<AgentId>& b) {
  for (AgentId x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  return true;
}

const std::array<Rational, 4> kAlphaChoices = {Rational(0), Rational(1, 4), Rational(1, 2),
                                               Rational(1)};

}  // namespace

GameInstance gen_cycle_example() {
  GameSpec::Definition def;
  def.agents = 6;
  for (int c = 0; c < 3; ++c) {
    def.coalitions.push_back(make_coalition(c, {2 * c, 2 * c + 1}, Rational(1)));
    def.self_generating.push_back(c);
  }
  def.domination_rules = {{{0}, 1}, {{1}, 2}, {{2}, 0}};
  return {GameSpec(std::move(def)), CoalitionStructure{0}};
}

CoalitionId chain_coalition(int gadget, int j) { return 6 * (gadget - 1) + (j - 1); }

GameInstance gen_exponential_chain(int k) {
  if (k < 1) throw ValidationError("gadget count must be at least 1");
  static constexpr int kMembers[6][3] = {{0, 1, 2}, {1, 3, -1}, {3, 4, 5},
                                         {4, 6, -1}, {2, 6, 7}, {5, 7, 8}};
  static constexpr int kOffset[6] = {1, 2, 4, 3, 2, 5};
  GameSpec::Definition def;
  def.agents = 8 * k + 1;
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= 6; ++j) {
      std::vector<AgentId> members;
      for (int a : kMembers[j - 1]) {
        if (a >= 0) members.push_back(8 * (i - 1) + a);
      }
      def.coalitions.push_back(make_coalition(chain_coalition(i, j), std::move(members),
                                              Rational(5 * (i - 1) + kOffset[j - 1])));
    }
  }
  for (int i = 1; i <= k; ++i) {
    auto c = [&](int j) { return chain_coalition(i, j); };
    auto rule = [&](CoalitionId from, CoalitionId to) {
      def.generation_rules.push_back({{from}, to});
    };
    rule(c(1), c(2));
    rule(c(1), c(5));
    rule(c(2), c(3));
    if (i == 1) {
      rule(c(3), c(1));
      rule(c(4), c(1));
    } else {
      rule(c(3), chain_coalition(i - 1, 4));
      rule(c(4), chain_coalition(i - 1, 4));
    }
    rule(c(5), c(6));
    if (i < k) rule(c(6), chain_coalition(i + 1, 1));
  }
  return {GameSpec(std::move(def)), CoalitionStructure{chain_coalition(k, 4)}};
}

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  int declared_clauses = -1;
  std::vector<int> pending;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first) || first == "c" || first[0] == 'c' || first == "%") continue;
    if (first == "p") {
      std::string format;
      if (!(tokens >> format >> cnf.variables >> declared_clauses) || format != "cnf" ||
          cnf.variables < 1 || declared_clauses < 0) {
        throw ValidationError("line " + std::to_string(line_no) + ": malformed problem line");
      }
      continue;
    }
    if (declared_clauses < 0) {
      throw ValidationError("line " + std::to_string(line_no) + ": clause before problem line");
    }
    std::istringstream lits(line);
    long long lit;
    while (lits >> lit) {
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ValidationError("line " + std::to_string(line_no) + ": clause has " +
                                std::to_string(pending.size()) + " literals, expected 3");
        }
        cnf.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (lit < -cnf.variables || lit > cnf.variables) {
        throw ValidationError("line " + std::to_string(line_no) + ": literal " +
                              std::to_string(lit) + " out of range");
      }
      pending.push_back(static_cast<int>(lit));
    }
    if (!lits.eof()) {
      throw ValidationError("line " + std::to_string(line_no) + ": non-numeric token");
    }
  }
  if (declared_clauses < 0) throw ValidationError("missing problem line");
  if (!pending.empty()) throw ValidationError("last clause is not terminated by 0");
  if (static_cast<int>(cnf.clauses.size()) != declared_clauses) {
    throw ValidationError("problem line declares " + std::to_string(declared_clauses) +
                          " clauses, found " + std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

std::string format_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.variables << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    out << clause[0] << ' ' << clause[1] << ' ' << clause[2] << " 0\n";
  }
  return out.str();
}

std::string_view sat_variant_name(SatVariant v) {
  switch (v) {
    case SatVariant::kSocial: return "social";
    case SatVariant::kLocal: return "local";
    case SatVariant::kConsiderate: return "considerate";
    case SatVariant::kFriendship: return "friendship";
    case SatVariant::kTies: return "ties";
    case SatVariant::kStrict: return "strict";
  }
  return "social";
}

SatVariant parse_sat_variant(std::string_view name) {
  for (SatVariant v : kSatVariants) {
    if (sat_variant_name(v) == name) return v;
  }
  throw ValidationError("unknown reduction variant '" + std::string(name) + "'");
}

SatReduction gen_sat_reduction(const Cnf& cnf, SatVariant variant) {
  const int k = cnf.variables;
  const int l = static_cast<int>(cnf.clauses.size());
  if (k < 1) throw ValidationError("formula needs at least one variable");
  if (l < 1) throw ValidationError("formula needs at least one clause");
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) {
      if (lit == 0 || lit < -k || lit > k) {
        throw ValidationError("literal " + std::to_string(lit) + " out of range");
      }
    }
  }

  auto u_pos = [&](int i) { return i - 1; };
  auto u_neg = [&](int i) { return k + i - 1; };
  auto x_c = [&](int j) { return 2 * k + j - 1; };
  auto w_pos = [&](int i) { return 2 * k + l + i - 1; };
  auto w_neg = [&](int i) { return 3 * k + l + i - 1; };
  const int base = 4 * k + l;
  const int stride = variant == SatVariant::kStrict                                     ? 3
                     : (variant == SatVariant::kSocial || variant == SatVariant::kLocal) ? 1
                                                                                         : 2;
  auto y = [&](int j) { return base + stride * (j - 1); };
  auto y2 = [&](int j) { return base + stride * (j - 1) + 1; };
  auto x2 = [&](int j) { return base + stride * (j - 1) + 2; };

  MatchingInstance::Definition def;
  def.vertices = base + stride * l;
  std::vector<int> side(def.vertices, 0);
  for (int i = 1; i <= k; ++i) side[w_pos(i)] = side[w_neg(i)] = 1;
  for (int j = 1; j <= l; ++j) {
    side[y(j)] = 1;
    if (stride >= 2) side[y2(j)] = 1;
  }
  def.bipartition = side;

  std::vector<EdgeId> start, target;
  auto add_edge = [&](VertexId u, VertexId v, Rational bu, Rational bv) {
    def.edges.push_back({u, v, std::move(bu), std::move(bv)});
    return static_cast<EdgeId>(def.edges.size() - 1);
  };
  auto add = [&](VertexId u, VertexId v, const Rational& b) { return add_edge(u, v, b, b); };

  for (int i = 1; i <= k; ++i) {
    target.push_back(add(u_pos(i), w_pos(i), 4 * l + 2 * k + i));
    target.push_back(add(u_neg(i), w_neg(i), 4 * l + 3 * k + i));
  }
  for (int i = 1; i <= k; ++i) {
    start.push_back(add(u_pos(i), w_neg(i), 4 * l + i));
    start.push_back(add(u_neg(i), w_pos(i), 4 * l + k + i));
  }
  for (int j = 1; j <= l; ++j) {
    std::set<VertexId> used;
    for (int idx = 1; idx <= 3; ++idx) {
      int lit = cnf.clauses[j - 1][idx - 1];
      VertexId w = lit > 0 ? w_pos(lit) : w_neg(-lit);
      if (used.insert(w).second) add(x_c(j), w, idx * l + j);
    }
  }

  for (int j = 1; j <= l; ++j) {
    switch (variant) {
      case SatVariant::kSocial:
      case SatVariant::kLocal:
        start.push_back(add(x_c(j), y(j), j));
        break;
      case SatVariant::kConsiderate:
      case SatVariant::kFriendship:
        start.push_back(add(x_c(j), y(j), Rational(2 * j - 1, 2)));
        target.push_back(add(x_c(j), y2(j), j));
        break;
      case SatVariant::kTies:
        start.push_back(add(x_c(j), y(j), j));
        target.push_back(add(x_c(j), y2(j), j));
        break;
      case SatVariant::kStrict:
        start.push_back(add_edge(x_c(j), y(j), 1, 1));
        target.push_back(add_edge(x_c(j), y2(j), Rational(1, 2), 2));
        target.push_back(add_edge(x2(j), y(j), 1, 2));
        start.push_back(add_edge(x2(j), y2(j), 2, 1));
        break;
    }
  }

  switch (variant) {
    case SatVariant::kSocial:
    case SatVariant::kLocal:
      def.variant = variant == SatVariant::kSocial ? Variant::kSocial : Variant::kLocal;
      def.lookahead = 2;
      for (VertexId a = 0; a < 2 * k + l; ++a) {
        for (int i = 1; i <= k; ++i) {
          def.links.emplace_back(a, w_pos(i));
          def.links.emplace_back(a, w_neg(i));
        }
      }
      break;
    case SatVariant::kConsiderate:
      def.variant = Variant::kConsiderate;
      for (int j = 1; j <= l; ++j) def.links.emplace_back(y(j), y2(j));
      break;
    case SatVariant::kFriendship:
      def.variant = Variant::kFriendship;
      for (int j = 1; j <= l; ++j) {
        Rational a(1, 2 * j - 1);
        def.alphas.push_back({x_c(j), y(j), a});
        def.alphas.push_back({y(j), x_c(j), a});
      }
      break;
    case SatVariant::kTies:
    case SatVariant::kStrict:
      def.variant = Variant::kPlain;
      break;
  }
  return {MatchingInstance(std::move(def)), Matching(std::move(start)),
          Matching(std::move(target))};
}

GameSpec gen_random_consistent(int n, int m, double density, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ValidationError("random specs need n >= 1 and m >= 1");
  if (!(density >= 0 && density <= 1)) throw ValidationError("density must lie in [0, 1]");
  Rng rng(seed);
  GameSpec::Definition def;
  def.agents = n;

  std::set<std::vector<AgentId>> seen;
  std::vector<AgentId> agents(n);
  for (int a = 0; a < n; ++a) agents[a] = a;
  std::vector<std::vector<AgentId>> members(m);
  for (int c = 0; c < m; ++c) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      int size = rng.uniform_int(1, std::min(n, 3));
      rng.shuffle(agents);
      members[c].assign(agents.begin(), agents.begin() + size);
      std::sort(members[c].begin(), members[c].end());
      if (!seen.count(members[c])) break;
    }
    seen.insert(members[c]);
  }
  std::vector<int> order(m);
  for (int c = 0; c < m; ++c) order[c] = c + 1;
  rng.shuffle(order);
  static const std::array<Rational, 4> kFractions = {Rational(0), Rational(1, 2),
                                                     Rational(1, 3), Rational(2, 3)};
  std::vector<Rational> weight(m);
  for (int c = 0; c < m; ++c) {
    weight[c] = order[c] + kFractions[rng.below(kFractions.size())];
    def.coalitions.push_back(make_coalition(c, members[c], weight[c]));
    if (rng.chance(1, 2)) def.self_generating.push_back(c);
  }

  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b || disjoint(members[a], members[b]) || !(weight[a] < weight[b])) continue;
      if (rng.bernoulli(density)) def.generation_rules.push_back({{a}, b});
    }
  }
  for (int b = 0; b < m; ++b) {
    if (!rng.bernoulli(density)) continue;
    std::vector<CoalitionId> overlapping;
    for (int a = 0; a < m; ++a) {
      if (a != b && !disjoint(members[a], members[b])) overlapping.push_back(a);
    }
    if (overlapping.empty()) continue;
    std::vector<CoalitionId> pre{overlapping[rng.below(overlapping.size())]};
    if (m > 2 && rng.chance(1, 2)) {
      CoalitionId extra = static_cast<CoalitionId>(rng.below(m));
      if (extra != b) pre.push_back(extra);
    }
    def.domination_rules.push_back({pre, b});
  }
  return GameSpec(std::move(def));
}

CoalitionStructure random_structure(const GameSpec& spec, std::uint64_t seed) {
  Rng rng(seed, 1);
  std::vector<CoalitionId> order(spec.num_coalitions());
  for (int c = 0; c < spec.num_coalitions(); ++c) order[c] = c;
  rng.shuffle(order);
  std::vector<int> ids;
  for (CoalitionId c : order) {
    if (!rng.chance(1, 2)) continue;
    bool fits = std::none_of(ids.begin(), ids.end(), [&](int x) { return spec.overlaps(x, c); });
    if (fits) ids.push_back(c);
  }
  return CoalitionStructure(std::move(ids));
}

MatchingInstance gen_random_matching(const RandomMatchingOptions& options, std::uint64_t seed) {
  Rng rng(seed, 2);
  MatchingInstance::Definition def;
  def.vertices = options.vertices;
  def.variant = options.variant;
  def.k = options.k;
  def.lookahead = options.lookahead;
  for (VertexId a = 0; a < options.vertices; ++a) {
    for (VertexId b = a + 1; b < options.vertices; ++b) {
      if (rng.bernoulli(options.edge_density)) def.edges.push_back({a, b, 0, 0});
      if (rng.bernoulli(options.link_density)) def.links.emplace_back(a, b);
    }
  }
  const int top = static_cast<int>(def.edges.size()) / 2 + 1;
  for (MatchingEdge& e : def.edges) e.bu = e.bv = rng.uniform_int(1, top);
  if (options.variant == Variant::kFriendship) {
    for (VertexId a = 0; a < options.vertices; ++a) {
      for (VertexId b = a + 1; b < options.vertices; ++b) {
        const Rational& ab = kAlphaChoices[rng.below(kAlphaChoices.size())];
        const Rational& ba =
            options.symmetric_alpha ? ab : kAlphaChoices[rng.below(kAlphaChoices.size())];
        if (ab > 0) def.alphas.push_back({a, b, ab});
        if (ba > 0) def.alphas.push_back({b, a, ba});
      }
    }
  }
  return MatchingInstance(std::move(def));
}

Matching random_matching(const MatchingInstance& inst, std::uint64_t seed) {
  Rng rng(seed, 3);
  std::vector<EdgeId> order(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e) order[e] = e;
  rng.shuffle(order);
  std::vector<int> degree(inst.num_vertices(), 0);
  std::vector<int> ids;
  for (EdgeId e : order) {
    const MatchingEdge& edge = inst.edge(e);
    if (!rng.chance(1, 2) || degree[edge.u] >= inst.k() || degree[edge.v] >= inst.k()) continue;
    ++degree[edge.u];
    ++degree[edge.v];
    ids.push_back(e);
  }
  return Matching(std::move(ids));
}

MatchingInstance gen_random_bipartite(int nu, int nw, Variant variant, std::uint64_t seed) {
  if (nu < 1 || nw < 1) throw ValidationError("both sides need at least one vertex");
  Rng rng(seed, 4);
  MatchingInstance::Definition def;
  def.vertices = nu + nw;
  def.variant = variant;
  std::vector<int> side(nu + nw, 0);
  for (int w = nu; w < nu + nw; ++w) side[w] = 1;
  def.bipartition = side;
  for (VertexId u = 0; u < nu; ++u) {
    for (VertexId w = nu; w < nu + nw; ++w) {
      if (rng.chance(7, 10)) def.edges.push_back({u, w, 1, 1});
    }
  }
  for (VertexId a = 0; a < nu + nw; ++a) {
    for (VertexId b = a + 1; b < nu + nw; ++b) {
      const bool inside_w = side[a] == 1 && side[b] == 1;
      if (variant == Variant::kSocial && rng.chance(6, 10)) def.links.emplace_back(a, b);
      if (variant == Variant::kConsiderate && !inside_w && rng.chance(3, 10)) {
        def.links.emplace_back(a, b);
      }
    }
  }
  if (variant == Variant::kFriendship) {
    for (VertexId a = 0; a < nu; ++a) {
      for (VertexId b = 0; b < nu; ++b) {
        if (a == b) continue;
        const Rational& value = kAlphaChoices[rng.below(kAlphaChoices.size())];
        if (value > 0) def.alphas.push_back({a, b, value});
      }
    }
  }
  MatchingInstance plain(def);

  PreferenceTable table;
  for (VertexId x = 0; x < nu + nw; ++x) {
    std::vector<EdgeId> listed(plain.incident(x).begin(), plain.incident(x).end());
    rng.shuffle(listed);
    std::vector<std::vector<EdgeId>> groups;
    for (EdgeId e : listed) {
      if (rng.chance(15, 100)) continue;
      if (groups.empty() || rng.chance(7, 10)) groups.emplace_back();
      groups.back().push_back(e);
    }
    table.groups.emplace(x, std::move(groups));
  }
  return with_preferences(plain, table);
}

}  // namespace matchdyn
