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

#include "matchdyn/game.hpp"

#include <gtest/gtest.h>

#include "matchdyn/errors.hpp"
#include "matchdyn/factory.hpp"
#include "support/reference.hpp"

namespace matchdyn {
namespace {

using Ids = std::vector<int>;

Ids ids(const CoalitionStructure& s) { return s.key(); }

GameSpec two_pairs(bool with_rule) {
  GameSpec::Definition d;
  d.agents = 3;
  d.coalitions = {{0, {0, 1}, 1}, {1, {1, 2}, 2}};
  d.self_generating = {0, 1};
  if (with_rule) d.domination_rules = {{{0}, 1}};
  return GameSpec(d);
}

TEST(GameSpecTest, RejectsBrokenDefinitions) {
  auto make = [](auto edit) {
    GameSpec::Definition d;
    d.agents = 2;
    d.coalitions = {{0, {0}, 1}, {1, {1}, 1}};
    edit(d);
    return GameSpec(d);
  };
  EXPECT_NO_THROW(make([](auto&) {}));
  EXPECT_THROW(make([](auto& d) { d.coalitions[1].id = 5; }), ValidationError);
  EXPECT_THROW(make([](auto& d) { d.coalitions[0].members = {2}; }), ValidationError);
  EXPECT_THROW(make([](auto& d) { d.coalitions[0].members = {}; }), ValidationError);
  EXPECT_THROW(make([](auto& d) { d.coalitions[0].weight = 0; }), ValidationError);
  EXPECT_THROW(make([](auto& d) { d.self_generating = {3}; }), ValidationError);
  EXPECT_THROW(make([](auto& d) { d.generation_rules = {{{}, 1}}; }), ValidationError);
  EXPECT_THROW(make([](auto& d) { d.generation_rules = {{{1}, 1}}; }), ValidationError);
  EXPECT_THROW(make([](auto& d) { d.domination_rules = {{{0}, 7}}; }), ValidationError);
}

TEST(GameSpecTest, WeightRanksFollowExactWeights) {
  GameSpec::Definition d;
  d.agents = 1;
  d.coalitions = {{0, {0}, Rational(1, 3)}, {1, {0}, Rational(2, 6)}, {2, {0}, Rational(1, 2)}};
  GameSpec spec(d);
  EXPECT_EQ(spec.weight_rank(0), spec.weight_rank(1));
  EXPECT_LT(spec.weight_rank(0), spec.weight_rank(2));
  EXPECT_TRUE(spec.weight_dominates(0, 1));
  EXPECT_TRUE(spec.weight_dominates(1, 0));
  EXPECT_FALSE(spec.weight_dominates(0, 2));
  EXPECT_FALSE(spec.weight_dominates(0, 0));
}

TEST(ConsistencyTest, FlagsEachKindOfViolation) {
  GameSpec::Definition d;
  d.agents = 4;
  d.coalitions = {{0, {0, 1}, 1}, {1, {1, 2}, 2}, {2, {3}, 3}};
  d.generation_rules = {{{0}, 1}};
  d.domination_rules = {{{0}, 1}};
  EXPECT_TRUE(check_consistency(GameSpec(d)).consistent());

  d.generation_rules = {{{0, 2}, 1}};
  ConsistencyReport r = check_consistency(GameSpec(d));
  EXPECT_FALSE(r.generation_ok);
  EXPECT_TRUE(r.domination_ok);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, RuleViolation::Kind::kGenerationPreconditionSize);

  d.generation_rules = {{{2}, 1}};
  r = check_consistency(GameSpec(d));
  EXPECT_EQ(r.violations.at(0).kind, RuleViolation::Kind::kGenerationNoOverlap);

  d.generation_rules = {};
  d.domination_rules = {{{2}, 1}};
  r = check_consistency(GameSpec(d));
  EXPECT_FALSE(r.domination_ok);
  EXPECT_EQ(r.violations.at(0).kind, RuleViolation::Kind::kDominationNoOverlap);

  d.domination_rules = {{{0, 1}, 1}};
  r = check_consistency(GameSpec(d));
  EXPECT_EQ(r.violations.at(0).kind, RuleViolation::Kind::kDominationTargetInPrecondition);
  EXPECT_FALSE(r.violations[0].describe().empty());
}

TEST(ConsistencyTest, ChainGadgetsAreInconsistent) {
  for (int k = 1; k <= 3; ++k) {
    EXPECT_FALSE(check_consistency(gen_exponential_chain(k).spec).generation_ok) << k;
  }
}

TEST(ConsistencyTest, CycleExampleDominatesAcrossDisjointPairs) {
  ConsistencyReport r = check_consistency(gen_cycle_example().spec);
  EXPECT_TRUE(r.generation_ok);
  EXPECT_FALSE(r.domination_ok);
}

TEST(FeasibilityTest, DetectsOverlapAndUnknownIds) {
  GameSpec spec = two_pairs(false);
  EXPECT_TRUE(is_feasible(spec, {}));
  EXPECT_TRUE(is_feasible(spec, {1}));
  EXPECT_FALSE(is_feasible(spec, {0, 1}));
  EXPECT_FALSE(is_feasible(spec, {4}));
  EXPECT_THROW(require_feasible(spec, {0, 1}), InfeasibleStart);
  EXPECT_THROW(blocking_coalitions(spec, {-1}), InfeasibleStart);
}

TEST(CandidateTest, CycleExampleOffersTheOtherPairs) {
  GameInstance g = gen_cycle_example();
  EXPECT_EQ(candidate_coalitions(g.spec, {0}), (Ids{1, 2}));
  EXPECT_EQ(blocking_coalitions(g.spec, {0}), (Ids{2}));
  EXPECT_TRUE(is_dominated(g.spec, {0}, 1));
}

TEST(CandidateTest, NoGeneratorsMeansNoCandidates) {
  GameSpec::Definition d;
  d.agents = 2;
  d.coalitions = {{0, {0}, 1}, {1, {1}, 1}};
  GameSpec spec(d);
  EXPECT_TRUE(candidate_coalitions(spec, {}).empty());
  EXPECT_TRUE(candidate_coalitions(spec, {0}).empty());
  EXPECT_TRUE(is_stable(spec, {}));
}

TEST(CandidateTest, ChainRuleGeneratesPreviousGadget) {
  GameInstance g = gen_exponential_chain(2);
  CoalitionStructure s{chain_coalition(2, 4)};
  EXPECT_EQ(candidate_coalitions(g.spec, s), (Ids{chain_coalition(1, 4)}));
}

TEST(CandidateTest, GenerationReportsItsSource) {
  GameInstance g = gen_exponential_chain(1);
  const CoalitionId c3 = chain_coalition(1, 3);
  auto rule = find_generation(g.spec, {chain_coalition(1, 2), chain_coalition(1, 4)}, c3);
  ASSERT_TRUE(rule.has_value());
  ASSERT_GE(*rule, 0);
  EXPECT_EQ(g.spec.generation_rules()[*rule].target, c3);
  EXPECT_EQ(find_generation(gen_cycle_example().spec, {}, 0), kSelfGenerated);
}

TEST(ResolveTest, CycleStepsThroughThreeStates) {
  GameInstance g = gen_cycle_example();
  Resolution r = resolve(g.spec, {0}, 2);
  EXPECT_EQ(ids(r.next), (Ids{2}));
  EXPECT_EQ(r.deleted, (Ids{0}));
  EXPECT_EQ(ids(resolve(g.spec, {2}, 1).next), (Ids{1}));
  EXPECT_EQ(ids(resolve(g.spec, {1}, 0).next), (Ids{0}));
  for (CoalitionStructure s : {CoalitionStructure{0}, {1}, {2}}) EXPECT_FALSE(is_stable(g.spec, s));
}

TEST(ResolveTest, SelfGeneratedIntoEmptyDeletesNothing) {
  GameSpec spec = two_pairs(false);
  Resolution r = resolve(spec, {}, 1);
  EXPECT_EQ(ids(r.next), (Ids{1}));
  EXPECT_TRUE(r.deleted.empty());
}

TEST(ResolveTest, GadgetStepRemovesBothLighterNeighbours) {
  GameInstance g = gen_exponential_chain(1);
  CoalitionStructure s{chain_coalition(1, 2), chain_coalition(1, 4)};
  Resolution r = resolve(g.spec, s, chain_coalition(1, 3));
  EXPECT_EQ(r.deleted, (Ids{chain_coalition(1, 2), chain_coalition(1, 4)}));
  EXPECT_EQ(ids(r.next), (Ids{chain_coalition(1, 3)}));
}

TEST(ResolveTest, RejectsNonBlockingCoalitions) {
  GameInstance g = gen_cycle_example();
  EXPECT_THROW(resolve(g.spec, {0}, 1), NotBlocking);
  EXPECT_THROW(resolve(g.spec, {0}, 0), NotBlocking);
}

TEST(ResolveTest, WeightTiesDominateBothWays) {
  GameSpec::Definition d;
  d.agents = 2;
  d.coalitions = {{0, {0, 1}, 2}, {1, {1}, 2}};
  d.self_generating = {0, 1};
  GameSpec spec(d);
  EXPECT_TRUE(is_stable(spec, {0}));
  EXPECT_TRUE(is_stable(spec, {1}));
  EXPECT_EQ(blocking_coalitions(spec, {}), (Ids{0, 1}));
}

TEST(ResolveTest, StoredRuleWithMultiplePreconditions) {
  GameSpec::Definition d;
  d.agents = 4;
  d.coalitions = {{0, {0}, 1}, {1, {1}, 1}, {2, {2}, 1}};
  d.self_generating = {0, 1, 2};
  d.domination_rules = {{{0, 1}, 2}};
  GameSpec spec(d);
  EXPECT_EQ(blocking_coalitions(spec, {0}), (Ids{1, 2}));
  Resolution r = resolve(spec, {0, 2}, 1);
  EXPECT_EQ(r.deleted, (Ids{2}));
  EXPECT_EQ(ids(r.next), (Ids{0, 1}));
}

TEST(ResolveTest, WithoutWeightDominationOverlapsStillLeave) {
  GameSpec::Definition d;
  d.agents = 2;
  d.coalitions = {{0, {0, 1}, 5}, {1, {1}, 1}};
  d.self_generating = {0, 1};
  d.include_weight_domination = false;
  GameSpec spec(d);
  EXPECT_EQ(blocking_coalitions(spec, {0}), (Ids{1}));
  EXPECT_EQ(ids(resolve(spec, {0}, 1).next), (Ids{1}));
}

TEST(ReplayTest, AcceptsGeneratedTraceAndRejectsTampering) {
  GameInstance g = gen_cycle_example();
  SimulationResult run = simulate(g.spec, g.start, {TieBreak::kLexMinId, 0, 10});
  EXPECT_EQ(replay(g.spec, g.start, run.trace), run.final_state);

  ImprovementTrace bad = run.trace;
  bad.steps[1].deleted.clear();
  try {
    replay(g.spec, g.start, bad);
    FAIL() << "expected InvalidTrace";
  } catch (const InvalidTrace& e) {
    EXPECT_EQ(e.step(), 1u);
  }
  bad = run.trace;
  bad.steps[0].inserted = 1;
  EXPECT_THROW(replay(g.spec, g.start, bad), InvalidTrace);
  bad = run.trace;
  bad.steps[0].rule = 0;
  EXPECT_THROW(replay(g.spec, g.start, bad), InvalidTrace);
}

TEST(SimulateTest, CycleExampleCyclesWithPeriodThree) {
  GameInstance g = gen_cycle_example();
  for (TieBreak policy : {TieBreak::kLexMinId, TieBreak::kMaxWeightThenMinId,
                          TieBreak::kSeededRandom}) {
    SimulationResult r = simulate(g.spec, g.start, {policy, 7, 100});
    EXPECT_EQ(r.outcome, SimulationOutcome::kCycle);
    EXPECT_EQ(r.cycle_period, 3u);
    EXPECT_EQ(r.cycle_start, 0u);
  }
}

TEST(SimulateTest, StableStartGivesEmptyTrace) {
  GameSpec spec = two_pairs(false);
  SimulationResult r = simulate(spec, {1});
  EXPECT_EQ(r.outcome, SimulationOutcome::kStable);
  EXPECT_TRUE(r.trace.empty());
}

TEST(SimulateTest, BudgetIsReported) {
  GameInstance g = gen_cycle_example();
  SimulationResult r = simulate(g.spec, g.start, {TieBreak::kLexMinId, 0, 2});
  EXPECT_EQ(r.outcome, SimulationOutcome::kBudgetExceeded);
  EXPECT_EQ(r.trace.size(), 2u);
}

TEST(SimulateTest, SingleGadgetInsertsFirstCoalitionTwice) {
  GameInstance g = gen_exponential_chain(1);
  SimulationResult r = simulate(g.spec, g.start);
  ASSERT_EQ(r.outcome, SimulationOutcome::kStable);
  int inserted = 0;
  for (const TraceStep& s : r.trace.steps) inserted += s.inserted == chain_coalition(1, 1);
  EXPECT_EQ(inserted, 2);
}

TEST(SimulateTest, SeededRunsAreReproducible) {
  GameSpec spec = gen_random_consistent(6, 9, 0.4, 11);
  CoalitionStructure s0 = random_structure(spec, 11);
  SimulationResult a = simulate(spec, s0, {TieBreak::kSeededRandom, 5, 500});
  SimulationResult b = simulate(spec, s0, {TieBreak::kSeededRandom, 5, 500});
  EXPECT_EQ(a.trace, b.trace);
}

TEST(SimulateTest, MaxWeightPicksHeaviestBlockingCoalition) {
  GameSpec::Definition d;
  d.agents = 3;
  d.coalitions = {{0, {0}, 1}, {1, {1}, 3}, {2, {2}, 2}};
  d.self_generating = {0, 1, 2};
  GameSpec spec(d);
  SimulationResult r = simulate(spec, {}, {TieBreak::kMaxWeightThenMinId, 0, 10});
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace.steps[0].inserted, 1);
  EXPECT_EQ(r.trace.steps[1].inserted, 2);
}

TEST(BlockingTest, MatchesBruteForceOnSixAgentSpecs) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GameSpec spec = gen_random_consistent(6, 8, 0.4, seed);
    reference::Graph all = reference::explore_game(spec.definition(), {});
    for (const auto& s : all.states) {
      EXPECT_EQ(blocking_coalitions(spec, CoalitionStructure(s)),
                reference::blocking(spec.definition(), s))
          << "seed " << seed;
    }
  }
}

}  // namespace
}  // namespace matchdyn
