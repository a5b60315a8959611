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

#include <gtest/gtest.h>

#include "matchdyn/factory.hpp"
#include "support/correspondence.hpp"

namespace matchdyn {
namespace {

using Ids = std::vector<int>;

TEST(EmbedTest, SocialGeneratorsAreLinkedEdges) {
  MatchingInstance::Definition d;
  d.vertices = 4;
  d.edges = {{0, 1, 1, 1}, {1, 2, 2, 2}, {2, 3, 3, 3}};
  d.links = {{0, 1}, {3, 2}};
  d.variant = Variant::kSocial;
  Embedding emb = embed(MatchingInstance(d));
  EXPECT_EQ(Ids(emb.spec.self_generating().begin(), emb.spec.self_generating().end()),
            (Ids{0, 2}));
  EXPECT_TRUE(emb.spec.generation_rules().empty());
  EXPECT_TRUE(emb.consistent);
  EXPECT_EQ(emb.spec.weight(1), 2);
}

TEST(EmbedTest, PlainGeneratesEveryEdge) {
  MatchingInstance inst = gen_random_matching({}, 3);
  Embedding emb = embed(inst);
  EXPECT_EQ(static_cast<int>(emb.spec.self_generating().size()), inst.num_edges());
}

TEST(EmbedTest, FriendshipWeightsAndRules) {
  // Path 0-1-2 with edges {0,1} and {1,2}; 2 is a friend of 0.
  MatchingInstance::Definition d;
  d.vertices = 3;
  d.edges = {{0, 1, 2, 2}, {1, 2, 5, 5}};
  d.alphas = {{0, 1, Rational(1, 2)}, {1, 0, Rational(1, 2)}, {0, 2, 1}, {2, 0, 1}};
  d.variant = Variant::kFriendship;
  MatchingInstance inst(d);
  Embedding emb = embed(inst);
  EXPECT_EQ(emb.spec.weight(0), 3);
  EXPECT_EQ(emb.spec.weight(1), 5);
  EXPECT_TRUE(emb.consistent);
  EXPECT_TRUE(is_blocking_pair(inst, {0}, 1));
  EXPECT_TRUE(is_blocking(emb.spec, emb.state_map(inst, {0}), 1));

  // With alpha 3 towards 0, vertex 2 values 0's edge above its own.
  d.alphas = {{0, 1, Rational(1, 2)}, {1, 0, Rational(1, 2)}, {0, 2, 3}, {2, 0, 3}};
  MatchingInstance refusing(d);
  Embedding emb2 = embed(refusing);
  EXPECT_FALSE(is_blocking_pair(refusing, {0}, 1));
  EXPECT_FALSE(is_blocking(emb2.spec, emb2.state_map(refusing, {0}), 1));
  EXPECT_FALSE(emb2.spec.domination_rules().empty());
}

TEST(EmbedTest, UnsupportedCases) {
  MatchingInstance::Definition d;
  d.vertices = 2;
  d.edges = {{0, 1, 1, 2}};
  EXPECT_THROW(embed(MatchingInstance(d)), UnsupportedEmbedding);
  d.edges = {{0, 1, 0, 0}};
  EXPECT_THROW(embed(MatchingInstance(d)), UnsupportedEmbedding);
  d.edges = {{0, 1, 1, 1}};
  d.variant = Variant::kLocal;
  d.k = 2;
  EXPECT_THROW(embed(MatchingInstance(d)), UnsupportedEmbedding);
  d.k = 1;
  d.lookahead = 4;
  EXPECT_THROW(embed(MatchingInstance(d)), UnsupportedEmbedding);
  d.lookahead = 3;
  EXPECT_NO_THROW(embed(MatchingInstance(d)));
  d.variant = Variant::kFriendship;
  d.alphas = {{0, 1, 1}};
  EXPECT_THROW(embed(MatchingInstance(d)), UnsupportedEmbedding);
}

TEST(EmbedTest, CopyLayoutForTwoPartners) {
  MatchingInstance::Definition d;
  d.vertices = 3;
  d.edges = {{0, 1, 1, 1}, {0, 2, 2, 2}, {1, 2, 3, 3}};
  d.k = 2;
  MatchingInstance inst(d);
  Embedding emb = embed(inst);
  EXPECT_EQ(emb.spec.num_coalitions(), 12);
  EXPECT_EQ(emb.spec.num_agents(), 3 * 2 + 3);
  EXPECT_EQ(emb.coalition(2, 1, 0), 10);
  Embedding::Slot s = emb.slot(10);
  EXPECT_EQ(s.edge, 2);
  EXPECT_EQ(s.i, 1);
  EXPECT_EQ(s.j, 0);
  EXPECT_EQ(emb.spec.coalition(10).members, (Ids{1 * 2 + 1, 2 * 2 + 0, 6 + 2}));
  CoalitionStructure all = emb.state_map(inst, {0, 1, 2});
  EXPECT_EQ(all.key(), (Ids{emb.coalition(0, 0, 0), emb.coalition(1, 1, 0), emb.coalition(2, 1, 1)}));
  EXPECT_EQ(emb.project(all).key(), (Ids{0, 1, 2}));
}

TEST(EmbedTest, StateMapIsBijectiveForSinglePartners) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    MatchingInstance inst = gen_random_matching({}, seed);
    Embedding emb = embed(inst);
    std::set<std::vector<int>> images;
    std::vector<StateKey> matchings = MatchingDynamics(inst).feasible_states(1u << 16);
    for (const StateKey& m : matchings) images.insert(emb.state_map(inst, Matching(m)).key());
    EXPECT_EQ(images.size(), matchings.size());
    EXPECT_EQ(GameDynamics(emb.spec).feasible_states(1u << 16).size(), matchings.size());
  }
}

TEST(EmbedTest, RulesAreConsistentWhereClaimed) {
  for (Variant v : {Variant::kSocial, Variant::kConsiderate, Variant::kFriendship,
                    Variant::kLocal}) {
    for (int k : {1, 2}) {
      if (v == Variant::kLocal && k == 2) continue;
      for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomMatchingOptions o;
        o.variant = v;
        o.k = k;
        Embedding emb = embed(gen_random_matching(o, seed));
        EXPECT_TRUE(emb.consistent) << variant_name(v) << " k=" << k << " seed " << seed;
        EXPECT_EQ(emb.consistent, check_consistency(emb.spec).consistent());
      }
    }
  }
}

TEST(EmbedTest, LookaheadThreeRulesAreFlagged) {
  RandomMatchingOptions o;
  o.variant = Variant::kLocal;
  o.lookahead = 3;
  o.vertices = 6;
  int inconsistent = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Embedding emb = embed(gen_random_matching(o, seed));
    EXPECT_EQ(emb.consistent, check_consistency(emb.spec).consistent());
    inconsistent += !emb.consistent;
  }
  EXPECT_GT(inconsistent, 0);
}

class EmbeddingFidelity : public ::testing::TestWithParam<std::tuple<Variant, int, int>> {};

TEST_P(EmbeddingFidelity, SuccessorsCorrespond) {
  auto [variant, k, lookahead] = GetParam();
  correspondence::Tally tally;
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    RandomMatchingOptions o;
    o.variant = variant;
    o.k = k;
    o.lookahead = lookahead;
    o.vertices = 3 + static_cast<int>(seed % 3);
    MatchingInstance inst = gen_random_matching(o, seed);
    correspondence::check_embedding(inst, embed(inst), tally);
  }
  EXPECT_EQ(tally.mismatches, 0u) << tally.first;
  EXPECT_GT(tally.states, 0u);
}

INSTANTIATE_TEST_SUITE_P(
    Variants, EmbeddingFidelity,
    ::testing::Values(std::make_tuple(Variant::kPlain, 1, 2), std::make_tuple(Variant::kSocial, 1, 2),
                      std::make_tuple(Variant::kSocial, 2, 2),
                      std::make_tuple(Variant::kConsiderate, 1, 2),
                      std::make_tuple(Variant::kConsiderate, 2, 2),
                      std::make_tuple(Variant::kFriendship, 1, 2),
                      std::make_tuple(Variant::kFriendship, 2, 2),
                      std::make_tuple(Variant::kLocal, 1, 2),
                      std::make_tuple(Variant::kLocal, 1, 3)));

TEST(EmbedTest, StabilityCorresponds) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomMatchingOptions o;
    o.variant = static_cast<Variant>(seed % 5);
    MatchingInstance inst = gen_random_matching(o, seed);
    Embedding emb = embed(inst);
    for (const StateKey& m : MatchingDynamics(inst).feasible_states(1u << 16)) {
      EXPECT_EQ(is_variant_stable(inst, Matching(m)),
                is_stable(emb.spec, emb.state_map(inst, Matching(m))));
    }
  }
}

}  // namespace
}  // namespace matchdyn
