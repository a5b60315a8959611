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

// Encodes a matching instance as a coalition formation game whose improvement
// steps coincide with the instance's blocking-pair resolutions.

#ifndef MATCHDYN_EMBEDDING_HPP_
#define MATCHDYN_EMBEDDING_HPP_

#include "matchdyn/game.hpp"
#include "matchdyn/matching.hpp"

namespace matchdyn {

// With k = 1 agents are the vertices and coalition e is edge e. With k > 1
// vertex v has agents v*k + i for its copies, edge e adds the agent n*k + e,
// and coalition e*k*k + i*k + j joins copy i of edge.u, copy j of edge.v and
// the edge's own agent.
struct Embedding {
  GameSpec spec;
  int vertices = 0;
  int k = 1;
  bool consistent = true;  // whether the emitted rules pass check_consistency

  struct Slot {
    EdgeId edge = 0;
    int i = 0;  // copy of edge.u
    int j = 0;  // copy of edge.v
  };

  CoalitionId coalition(EdgeId e, int i, int j) const { return (e * k + i) * k + j; }
  Slot slot(CoalitionId c) const { return {c / (k * k), (c / k) % k, c % k}; }

  // Places each matched edge, in id order, on the lowest free copies.
  CoalitionStructure state_map(const MatchingInstance& inst, const Matching& m) const;
  // Forgets the copies.
  Matching project(const CoalitionStructure& s) const;
};

// Throws UnsupportedEmbedding for local instances with k > 1 or lookahead
// above 3, for friendship instances with asymmetric alpha, and whenever
// benefits are not correlated and positive.
Embedding embed(const MatchingInstance& inst);

}  // namespace matchdyn

#endif  // MATCHDYN_EMBEDDING_HPP_
