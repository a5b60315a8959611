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

// Two-phase paths to stability for bipartite instances with general
// preferences.

#ifndef MATCHDYN_BIPARTITE_HPP_
#define MATCHDYN_BIPARTITE_HPP_

#include <cstddef>
#include <map>
#include <vector>

#include "matchdyn/matching.hpp"

namespace matchdyn {

// Ranked groups of incident edges per vertex, best group first. Edges in the
// same group are tied; edges a vertex does not list are unacceptable to it.
struct PreferenceTable {
  std::map<VertexId, std::vector<std::vector<EdgeId>>> groups;
};

// Replaces the benefits of every listed vertex: with r groups, edges in group
// t (from 0) are worth r - t and unlisted edges 0. Vertices missing from the
// table keep their benefits. Throws ValidationError.
MatchingInstance with_preferences(const MatchingInstance& inst, const PreferenceTable& table);

// Throws PreconditionViolated unless the instance has one partner per
// vertex, a bipartition (side 0 is U, side 1 is W) that every edge crosses, a
// plain, social, considerate or friendship variant, no link inside W for
// considerate instances and positive alpha only inside U for friendship ones.
void check_two_phase_preconditions(const MatchingInstance& inst);

struct TwoPhaseResult {
  MatchingTrace trace;
  std::size_t phase1_steps = 0;
  std::size_t phase2_steps = 0;
  std::size_t bound = 0;  // 2 * |U| * |W|
  Matching final_matching;
};

// First resolves blocking pairs whose W vertex is matched, by increasing
// (w, u). Then lets the lowest W vertex in a blocking pair pick its best
// pair, judged by its perceived utility afterwards for friendship instances
// and by its benefit otherwise, ties to the lowest u.
TwoPhaseResult two_phase_converge(const MatchingInstance& inst, const Matching& m0);

}  // namespace matchdyn

#endif  // MATCHDYN_BIPARTITE_HPP_
