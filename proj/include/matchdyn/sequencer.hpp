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

// Polynomial paths to stability for consistent games, and compression of
// arbitrary improvement sequences between two structures.

#ifndef MATCHDYN_SEQUENCER_HPP_
#define MATCHDYN_SEQUENCER_HPP_

#include <cstddef>

#include "matchdyn/game.hpp"

namespace matchdyn {

struct ConvergenceReport {
  ImprovementTrace trace;
  std::size_t phase1_steps = 0;
  std::size_t phase2_steps = 0;
  std::size_t bound_phase1 = 0;  // n * m^2
  std::size_t bound_phase2 = 0;  // n * m
  CoalitionStructure final_state;

  std::size_t bound() const { return bound_phase1 + bound_phase2; }
};

// Runs the two-phase marking procedure from s0. The first phase moves or
// creates markings while some step can push out an existing marking; the
// second repeatedly walks a fresh marking to the heaviest reachable vertex.
// Throws InconsistentSpec or InfeasibleStart.
ConvergenceReport converge(const GameSpec& spec, const CoalitionStructure& s0);

// Drops every step whose coalition neither leads, through generation
// predecessors, to a coalition that survives, nor removes a coalition that
// must be removed. The result replays from s0 to the same end structure.
// Throws InvalidTrace when `trace` does not replay from s0.
ImprovementTrace truncate(const GameSpec& spec, const CoalitionStructure& s0,
                          const ImprovementTrace& trace);

// |s0| * m^2 + |s_end| * m.
std::size_t truncation_bound(const GameSpec& spec, const CoalitionStructure& s0,
                             const CoalitionStructure& s_end);

}  // namespace matchdyn

#endif  // MATCHDYN_SEQUENCER_HPP_
