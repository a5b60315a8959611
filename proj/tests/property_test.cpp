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

#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace {

void expect_holds(const props::Outcome& o) {
  EXPECT_GT(o.cases, 0u);
  EXPECT_EQ(o.failures, 0u) << o.name << ": " << o.first_failure;
}

TEST(PropertyTest, WeightDominationMinimum) { expect_holds(props::weight_domination_minimum(1000)); }
TEST(PropertyTest, FeasibilityPreservation) { expect_holds(props::feasibility_preservation(1000)); }
TEST(PropertyTest, ExchangeEdgesIncreaseWeight) {
  expect_holds(props::exchange_edges_increase_weight(1000));
}
TEST(PropertyTest, PhaseTwoPermanence) { expect_holds(props::phase2_permanence(1000)); }
TEST(PropertyTest, FriendshipWithZeroAlphaIsPlain) {
  expect_holds(props::friendship_alpha_zero_is_plain(1000));
}
TEST(PropertyTest, StrictImprovement) { expect_holds(props::strict_improvement(800)); }
TEST(PropertyTest, BlockingMatchesReference) { expect_holds(props::blocking_matches_reference(1000)); }
TEST(PropertyTest, MarksDecodeToStructures) { expect_holds(props::marks_decode_to_structures(800)); }
TEST(PropertyTest, VariantMonotonicity) { expect_holds(props::variant_monotonicity(800)); }
TEST(PropertyTest, TruncateIdempotent) { expect_holds(props::truncate_idempotent(800)); }
TEST(PropertyTest, BipartitePhaseInvariants) { expect_holds(props::bipartite_phase_invariants(1000)); }
TEST(PropertyTest, SinksAreStable) { expect_holds(props::sinks_are_stable(400)); }
TEST(PropertyTest, SerializationRoundTrip) { expect_holds(props::serialization_round_trip(400)); }

}  // namespace
