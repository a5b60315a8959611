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

// Coalition formation games with constraints: candidate generation,
// domination, blocking coalitions and improvement steps.

#ifndef MATCHDYN_GAME_HPP_
#define MATCHDYN_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchdyn/id_set.hpp"
#include "matchdyn/rational.hpp"

namespace matchdyn {

using AgentId = int;
using CoalitionId = int;

struct Coalition {
  CoalitionId id = 0;
  std::vector<AgentId> members;  // strictly increasing
  Rational weight;               // > 0
};

// (precondition, target). Generation rules require a nonempty precondition
// not containing the target; self-generation lives in GameSpec instead.
struct Rule {
  std::vector<CoalitionId> precondition;  // strictly increasing
  CoalitionId target = 0;

  friend bool operator==(const Rule&, const Rule&) = default;
};
using GenerationRule = Rule;
using DominationRule = Rule;

struct CoalitionTag {};
using CoalitionStructure = SortedIdSet<CoalitionTag>;

// An immutable, validated game. The weight-domination rules
// D_w = {({C1},C2) : w(C1) >= w(C2), C1 and C2 overlap, C1 != C2} are part
// of the effective domination relation whenever include_weight_domination is
// set, but they are evaluated on demand and never stored.
class GameSpec {
 public:
  struct Definition {
    int agents = 0;
    std::vector<Coalition> coalitions;
    std::vector<CoalitionId> self_generating;
    std::vector<GenerationRule> generation_rules;
    std::vector<DominationRule> domination_rules;
    bool include_weight_domination = true;
  };

  // Throws ValidationError naming the first broken reference.
  explicit GameSpec(Definition definition);

  const Definition& definition() const { return def_; }
  int num_agents() const { return def_.agents; }
  int num_coalitions() const { return static_cast<int>(def_.coalitions.size()); }
  const Coalition& coalition(CoalitionId id) const { return def_.coalitions[id]; }
  std::span<const Coalition> coalitions() const { return def_.coalitions; }
  const Rational& weight(CoalitionId id) const { return def_.coalitions[id].weight; }

  bool is_self_generating(CoalitionId id) const { return self_gen_[id] != 0; }
  std::span<const CoalitionId> self_generating() const { return def_.self_generating; }
  std::span<const GenerationRule> generation_rules() const { return def_.generation_rules; }
  std::span<const DominationRule> domination_rules() const { return def_.domination_rules; }
  bool include_weight_domination() const { return def_.include_weight_domination; }

  // Rule indices whose target is `id`.
  std::span<const int> generation_rules_into(CoalitionId id) const { return gen_into_[id]; }
  std::span<const int> domination_rules_into(CoalitionId id) const { return dom_into_[id]; }
  std::span<const CoalitionId> coalitions_of_agent(AgentId a) const { return of_agent_[a]; }

  bool overlaps(CoalitionId a, CoalitionId b) const {
    return overlap_[static_cast<std::size_t>(a) * def_.coalitions.size() + b] != 0;
  }
  // Dense rank: weight(a) >= weight(b) iff weight_rank(a) >= weight_rank(b).
  int weight_rank(CoalitionId id) const { return rank_[id]; }
  // True iff ({a}, b) is in D_w (regardless of include_weight_domination).
  bool weight_dominates(CoalitionId a, CoalitionId b) const {
    return a != b && overlaps(a, b) && rank_[a] >= rank_[b];
  }

 private:
  Definition def_;
  std::vector<char> self_gen_;
  std::vector<std::vector<int>> gen_into_;
  std::vector<std::vector<int>> dom_into_;
  std::vector<std::vector<CoalitionId>> of_agent_;
  std::vector<char> overlap_;
  std::vector<int> rank_;
};

bool is_feasible(const GameSpec& spec, const CoalitionStructure& s);
// Throws InfeasibleStart when `s` references unknown coalitions or two
// active coalitions share an agent.
void require_feasible(const GameSpec& spec, const CoalitionStructure& s);

struct RuleViolation {
  enum class Kind {
    kGenerationPreconditionSize,  // not exactly one precondition coalition
    kGenerationNoOverlap,         // precondition does not share an agent with target
    kDominationTargetInPrecondition,
    kDominationNoOverlap,         // no precondition coalition overlaps the target
  };
  Kind kind;
  bool generation = false;  // which rule list `rule` indexes
  int rule = 0;

  std::string describe() const;
};

struct ConsistencyReport {
  bool generation_ok = true;
  bool domination_ok = true;
  std::vector<RuleViolation> violations;

  bool consistent() const { return generation_ok && domination_ok; }
};

ConsistencyReport check_consistency(const GameSpec& spec);

std::vector<CoalitionId> candidate_coalitions(const GameSpec& spec,
                                              const CoalitionStructure& s);

// Some effective domination rule (T, c) has T contained in s.
bool is_dominated(const GameSpec& spec, const CoalitionStructure& s, CoalitionId c);

std::vector<CoalitionId> blocking_coalitions(const GameSpec& spec,
                                             const CoalitionStructure& s);

bool is_blocking(const GameSpec& spec, const CoalitionStructure& s, CoalitionId c);

bool is_stable(const GameSpec& spec, const CoalitionStructure& s);

// How a candidate got generated: self-generation (rule == kSelfGenerated) or
// the index of a generation rule whose precondition is present.
inline constexpr int kSelfGenerated = -1;
std::optional<int> find_generation(const GameSpec& spec, const CoalitionStructure& s,
                                   CoalitionId c);

struct Resolution {
  CoalitionStructure next;
  std::vector<CoalitionId> deleted;
};

// Inserts blocking coalition c and removes, in one pass, every coalition
// dominated by an effective rule whose precondition lies in s + {c}.
// Throws NotBlocking.
Resolution resolve(const GameSpec& spec, const CoalitionStructure& s, CoalitionId c);

struct TraceStep {
  CoalitionId inserted = 0;
  std::vector<CoalitionId> deleted;
  int rule = kSelfGenerated;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ImprovementTrace {
  std::vector<TraceStep> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  friend bool operator==(const ImprovementTrace&, const ImprovementTrace&) = default;
};

// Replays `trace` from s0, checking every step (blocking, generation source,
// deletion set). Returns the end structure or throws InvalidTrace.
CoalitionStructure replay(const GameSpec& spec, const CoalitionStructure& s0,
                          const ImprovementTrace& trace);

enum class TieBreak { kLexMinId, kMaxWeightThenMinId, kSeededRandom };

struct SimulationOptions {
  TieBreak policy = TieBreak::kLexMinId;
  std::uint64_t seed = 0;
  std::size_t max_steps = 100000;
};

enum class SimulationOutcome { kStable, kCycle, kBudgetExceeded };

struct SimulationResult {
  SimulationOutcome outcome = SimulationOutcome::kStable;
  ImprovementTrace trace;
  CoalitionStructure final_state;
  // For kCycle: the repeated structure was first seen after cycle_start steps.
  std::size_t cycle_start = 0;
  std::size_t cycle_period = 0;
};

SimulationResult simulate(const GameSpec& spec, const CoalitionStructure& s0,
                          const SimulationOptions& options = {});

}  // namespace matchdyn

#endif  // MATCHDYN_GAME_HPP_
