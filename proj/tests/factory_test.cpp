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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "matchdyn/bipartite.hpp"
#include "matchdyn/oracle.hpp"
#include "matchdyn/serialize.hpp"

namespace matchdyn {
namespace {

using Ids = std::vector<int>;

Cnf cnf(int variables, std::vector<std::array<int, 3>> clauses) { return {variables, clauses}; }

TEST(CycleExampleTest, ExactInstance) {
  GameInstance g = gen_cycle_example();
  EXPECT_EQ(g.spec.num_agents(), 6);
  ASSERT_EQ(g.spec.num_coalitions(), 3);
  EXPECT_EQ(g.spec.coalition(0).members, (Ids{0, 1}));
  EXPECT_EQ(g.spec.coalition(2).members, (Ids{4, 5}));
  for (const Coalition& c : g.spec.coalitions()) EXPECT_EQ(c.weight, 1);
  EXPECT_EQ(g.spec.self_generating().size(), 3u);
  EXPECT_TRUE(g.spec.generation_rules().empty());
  ASSERT_EQ(g.spec.domination_rules().size(), 3u);
  EXPECT_EQ(g.start.key(), (Ids{0}));
}

TEST(ExponentialChainTest, GadgetShape) {
  GameInstance one = gen_exponential_chain(1);
  EXPECT_EQ(one.spec.num_agents(), 9);
  EXPECT_EQ(one.spec.num_coalitions(), 6);
  const int offsets[] = {1, 2, 4, 3, 2, 5};
  GameInstance three = gen_exponential_chain(3);
  EXPECT_EQ(three.spec.num_agents(), 9 * 3 - 2);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 6; ++j) {
      EXPECT_EQ(three.spec.weight(chain_coalition(i, j)), 5 * (i - 1) + offsets[j - 1]);
    }
  }
  EXPECT_EQ(three.start.key(), (Ids{chain_coalition(3, 4)}));
  EXPECT_TRUE(three.spec.domination_rules().empty());
  EXPECT_TRUE(three.spec.self_generating().empty());
  EXPECT_THROW(gen_exponential_chain(0), ValidationError);
}

TEST(ExponentialChainTest, ConsecutiveGadgetsShareOneAgent) {
  GameInstance g = gen_exponential_chain(2);
  std::set<AgentId> first, second;
  for (int j = 1; j <= 6; ++j) {
    for (AgentId a : g.spec.coalition(chain_coalition(1, j)).members) first.insert(a);
    for (AgentId a : g.spec.coalition(chain_coalition(2, j)).members) second.insert(a);
  }
  std::vector<AgentId> shared;
  std::set_intersection(first.begin(), first.end(), second.begin(), second.end(),
                        std::back_inserter(shared));
  EXPECT_EQ(shared.size(), 1u);
}

TEST(DimacsTest, ParsesAndFormats) {
  Cnf f = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 2 0\n");
  EXPECT_EQ(f.variables, 3);
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[0], (std::array<int, 3>{1, -2, 3}));
  Cnf again = parse_dimacs(format_dimacs(f));
  EXPECT_EQ(again.variables, f.variables);
  EXPECT_EQ(again.clauses, f.clauses);
}

TEST(DimacsTest, RejectsMalformedInput) {
  EXPECT_THROW(parse_dimacs("1 2 3 0\n"), ValidationError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 0\n"), ValidationError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), ValidationError);
  EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 2 0\n"), ValidationError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 2 0\n"), ValidationError);
}

TEST(SatReductionTest, SatVariantNamesRoundTrip) {
  for (SatVariant v : kSatVariants) EXPECT_EQ(parse_sat_variant(sat_variant_name(v)), v);
  EXPECT_THROW(parse_sat_variant("plain"), ValidationError);
}

TEST(SatReductionTest, ClauseEdgeBenefitsFollowTable) {
  SatReduction r = gen_sat_reduction(cnf(3, {{1, -2, 3}}), SatVariant::kSocial);
  const MatchingInstance& inst = r.instance;
  const int k = 3, l = 1;
  const VertexId xc = 2 * k;
  auto w_pos = [&](int i) { return 2 * k + l + i - 1; };
  auto w_neg = [&](int i) { return 3 * k + l + i - 1; };
  EXPECT_EQ(inst.utility(*inst.edge_between(xc, w_pos(1)), xc), 2);
  EXPECT_EQ(inst.utility(*inst.edge_between(xc, w_neg(2)), xc), 3);
  EXPECT_EQ(inst.utility(*inst.edge_between(xc, w_pos(3)), xc), 4);
  EXPECT_FALSE(inst.edge_between(xc, w_pos(2)).has_value());
}

TEST(SatReductionTest, RepeatedLiteralsKeepOneEdge) {
  SatReduction r = gen_sat_reduction(cnf(1, {{1, 1, 1}}), SatVariant::kTies);
  const VertexId xc = 2;
  int edges = 0;
  for (EdgeId e : r.instance.incident(xc)) edges += r.instance.other(e, xc) < 5;
  EXPECT_EQ(edges, 1);
}

TEST(SatReductionTest, CentralGadgetBlocksOnlyTowardsTarget) {
  for (SatVariant v : kSatVariants) {
    const int k = 2;
    SatReduction r = gen_sat_reduction(cnf(k, {{1, 2, -1}, {-2, -1, 1}}), v);
    Ids central;
    for (int e = 0; e < 2 * k; ++e) central.push_back(e);
    EXPECT_EQ(blocking_pairs(r.instance, r.start), central) << sat_variant_name(v);
  }
}

TEST(SatReductionTest, TargetIsStableAndBothEndsFeasible) {
  std::vector<Cnf> formulas = {cnf(1, {{1, 1, 1}}), cnf(2, {{1, 1, 2}, {-1, -2, -2}}),
                               cnf(3, {{1, -2, 3}, {-1, 2, -3}, {2, 3, 1}})};
  for (SatVariant v : kSatVariants) {
    for (const Cnf& f : formulas) {
      SatReduction r = gen_sat_reduction(f, v);
      EXPECT_TRUE(is_feasible(r.instance, r.start));
      EXPECT_TRUE(is_feasible(r.instance, r.target));
      EXPECT_TRUE(is_variant_stable(r.instance, r.target)) << sat_variant_name(v);
    }
  }
}

TEST(SatReductionTest, ClauseGadgetValues) {
  SatReduction r = gen_sat_reduction(cnf(1, {{1, 1, 1}, {-1, -1, -1}}), SatVariant::kFriendship);
  const VertexId x2 = 2 + 1;      // x_{C_2}
  const VertexId y2 = 4 + 2 + 2;  // y_{C_2}
  auto e = r.instance.edge_between(x2, y2);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(r.instance.utility(*e, x2), Rational(3, 2));
  EXPECT_EQ(r.instance.alpha(x2, y2), Rational(1, 3));
  EXPECT_EQ(perceived_utility(r.instance, Matching{*e}, x2), 2);
}

TEST(SatReductionTest, ConsiderateYieldsOnlyOnceSingle) {
  SatReduction r = gen_sat_reduction(cnf(1, {{1, 1, 1}}), SatVariant::kConsiderate);
  const VertexId xc = 2, y = 5, y2 = 6;
  EdgeId to_y = *r.instance.edge_between(xc, y);
  EdgeId to_y2 = *r.instance.edge_between(xc, y2);
  EXPECT_FALSE(is_blocking_pair(r.instance, {to_y}, to_y2));
  EXPECT_TRUE(is_blocking_pair(r.instance, {}, to_y2));
}

TEST(SatReductionTest, TinyFormulasDecideReachability) {
  for (SatVariant v : kSatVariants) {
    SatReduction sat = gen_sat_reduction(cnf(1, {{1, 1, 1}}), v);
    MatchingDynamics yes(sat.instance);
    EXPECT_TRUE(reachable(yes, sat.start.key(), sat.target.key()).reachable) << sat_variant_name(v);
    SatReduction unsat = gen_sat_reduction(cnf(1, {{1, 1, 1}, {-1, -1, -1}}), v);
    MatchingDynamics no(unsat.instance);
    EXPECT_FALSE(reachable(no, unsat.start.key(), unsat.target.key()).reachable)
        << sat_variant_name(v);
  }
}

TEST(SatReductionTest, RejectsMalformedFormulas) {
  EXPECT_THROW(gen_sat_reduction(cnf(0, {}), SatVariant::kSocial), ValidationError);
  EXPECT_THROW(gen_sat_reduction(cnf(1, {}), SatVariant::kSocial), ValidationError);
  EXPECT_THROW(gen_sat_reduction(cnf(1, {{1, 2, 1}}), SatVariant::kSocial), ValidationError);
}

TEST(RandomConsistentTest, AlwaysConsistentAndDeterministic) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GameSpec a = gen_random_consistent(8, 12, 0.5, seed);
    EXPECT_TRUE(check_consistency(a).consistent()) << seed;
    EXPECT_EQ(to_json(a), to_json(gen_random_consistent(8, 12, 0.5, seed)));
    EXPECT_TRUE(is_feasible(a, random_structure(a, seed)));
  }
}

TEST(RandomConsistentTest, ZeroDensityHasNoStoredRules) {
  GameSpec spec = gen_random_consistent(5, 9, 0.0, 3);
  EXPECT_TRUE(spec.generation_rules().empty());
  EXPECT_TRUE(spec.domination_rules().empty());
}

TEST(RandomConsistentTest, RejectsBadParameters) {
  EXPECT_THROW(gen_random_consistent(0, 3, 0.5, 1), ValidationError);
  EXPECT_THROW(gen_random_consistent(3, 0, 0.5, 1), ValidationError);
  EXPECT_THROW(gen_random_consistent(3, 3, 1.5, 1), ValidationError);
}

TEST(RandomConsistentTest, MatchesGoldenFile) {
  std::ifstream in(std::string(MATCHDYN_TEST_DATA) + "/random_consistent_n6_m8_d40_s42.json");
  ASSERT_TRUE(in) << "missing golden file";
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(to_json(gen_random_consistent(6, 8, 0.4, 42)).dump(2) + "\n", golden.str());
}

TEST(RandomMatchingTest, FeasibleAndCorrelated) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomMatchingOptions o;
    o.k = 1 + static_cast<int>(seed % 2);
    o.variant = Variant::kFriendship;
    MatchingInstance inst = gen_random_matching(o, seed);
    EXPECT_TRUE(inst.correlated());
    EXPECT_TRUE(inst.symmetric_alpha());
    EXPECT_TRUE(is_feasible(inst, random_matching(inst, seed)));
  }
}

TEST(RandomBipartiteTest, MeetsTwoPhasePreconditions) {
  for (Variant v : {Variant::kPlain, Variant::kSocial, Variant::kConsiderate,
                    Variant::kFriendship}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      MatchingInstance inst = gen_random_bipartite(4, 5, v, seed);
      EXPECT_NO_THROW(check_two_phase_preconditions(inst));
      EXPECT_EQ(inst.variant(), v);
    }
  }
}

}  // namespace
}  // namespace matchdyn
