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

// Constructed instances: the three-pair cycle, the chained gadgets that force
// exponentially long paths, the satisfiability reductions, and seeded random
// families.

#ifndef MATCHDYN_FACTORY_HPP_
#define MATCHDYN_FACTORY_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matchdyn/bipartite.hpp"
#include "matchdyn/game.hpp"
#include "matchdyn/matching.hpp"

namespace matchdyn {

struct GameInstance {
  GameSpec spec;
  CoalitionStructure start;
};

// Six agents, pairs {0,1}, {2,3}, {4,5} of weight 1, each self-generating,
// and a cyclic domination rule between consecutive pairs. Every improvement
// sequence from {{0,1}} cycles.
GameInstance gen_cycle_example();

// Coalition C_{j,i} (j = 1..6, gadget i = 1..k) has id 6(i-1) + j - 1.
CoalitionId chain_coalition(int gadget, int j);
// k chained gadgets of nine agents each, consecutive gadgets sharing one
// agent. Starts from {C_{4,k}}. Throws ValidationError for k < 1.
GameInstance gen_exponential_chain(int k);

// Literals are +v or -v for variables 1..variables.
struct Cnf {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

// Reads DIMACS CNF with exactly three literals per clause. Throws
// ValidationError.
Cnf parse_dimacs(std::string_view text);
std::string format_dimacs(const Cnf& cnf);

enum class SatVariant { kSocial, kLocal, kConsiderate, kFriendship, kTies, kStrict };
std::string_view sat_variant_name(SatVariant v);
SatVariant parse_sat_variant(std::string_view name);
inline constexpr std::array<SatVariant, 6> kSatVariants = {
    SatVariant::kSocial,     SatVariant::kLocal, SatVariant::kConsiderate,
    SatVariant::kFriendship, SatVariant::kTies,  SatVariant::kStrict};

struct SatReduction {
  MatchingInstance instance;
  Matching start;
  Matching target;  // reachable from start iff the formula is satisfiable
};

// Vertex layout: u_{x_i} = i-1, u_{!x_i} = k+i-1, x_{C_j} = 2k+j-1,
// w_{x_i} = 2k+l+i-1, w_{!x_i} = 3k+l+i-1, then per clause y_{C_j},
// y'_{C_j} and (strict only) x'_{C_j}. Repeated literals in a clause keep
// their first occurrence. Throws ValidationError for malformed formulas.
SatReduction gen_sat_reduction(const Cnf& cnf, SatVariant variant);

// Consistent by construction: distinct weights, generation rules only from a
// lighter to an overlapping heavier coalition, every domination rule with a
// precondition coalition overlapping its target. Throws ValidationError
// unless n, m >= 1 and density lies in [0, 1].
GameSpec gen_random_consistent(int n, int m, double density, std::uint64_t seed);

// A random feasible structure.
CoalitionStructure random_structure(const GameSpec& spec, std::uint64_t seed);

struct RandomMatchingOptions {
  int vertices = 5;
  double edge_density = 0.6;
  double link_density = 0.4;
  Variant variant = Variant::kPlain;
  int k = 1;
  int lookahead = 2;
  bool symmetric_alpha = true;
};

// Correlated integer benefits with occasional ties; friendship alphas from
// {0, 1/4, 1/2, 1}.
MatchingInstance gen_random_matching(const RandomMatchingOptions& options, std::uint64_t seed);

// A random feasible matching.
Matching random_matching(const MatchingInstance& inst, std::uint64_t seed);

// Bipartite instance with |U| = nu (vertices 0..nu-1) and |W| = nw, random
// preference lists with ties and omissions, links and alphas that meet the
// two-phase preconditions of the variant.
MatchingInstance gen_random_bipartite(int nu, int nw, Variant variant, std::uint64_t seed);

}  // namespace matchdyn

#endif  // MATCHDYN_FACTORY_HPP_
