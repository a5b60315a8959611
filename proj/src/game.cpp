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

#include <algorithm>
#include <map>
#include <unordered_map>

#include "matchdyn/errors.hpp"
#include "matchdyn/random.hpp"

namespace matchdyn {
namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Presence flags and agent ownership for one structure.
struct StateView {
  std::vector<char> present;
  std::vector<CoalitionId> owner;  // -1 when the agent is unassigned

  StateView(const GameSpec& spec, const CoalitionStructure& s)
      : present(spec.num_coalitions(), 0), owner(spec.num_agents(), -1) {
    for (CoalitionId id : s) {
      if (id < 0 || id >= spec.num_coalitions()) {
        throw InfeasibleStart("structure references unknown coalition " + std::to_string(id));
      }
      present[id] = 1;
      for (AgentId a : spec.coalition(id).members) {
        if (owner[a] >= 0) {
          throw InfeasibleStart("agent " + std::to_string(a) + " is in coalitions " +
                                std::to_string(owner[a]) + " and " + std::to_string(id));
        }
        owner[a] = id;
      }
    }
  }

  bool all_present(std::span<const CoalitionId> ids) const {
    return std::all_of(ids.begin(), ids.end(), [&](CoalitionId c) { return present[c] != 0; });
  }
};

bool dominated_in(const GameSpec& spec, const StateView& view, CoalitionId c) {
  for (int r : spec.domination_rules_into(c)) {
    if (view.all_present(spec.domination_rules()[r].precondition)) return true;
  }
  if (spec.include_weight_domination()) {
    for (AgentId a : spec.coalition(c).members) {
      CoalitionId p = view.owner[a];
      if (p >= 0 && p != c && spec.weight_rank(p) >= spec.weight_rank(c)) return true;
    }
  }
  return false;
}

std::optional<int> generation_in(const GameSpec& spec, const StateView& view, CoalitionId c) {
  if (view.present[c]) return std::nullopt;
  if (spec.is_self_generating(c)) return kSelfGenerated;
  for (int r : spec.generation_rules_into(c)) {
    if (view.all_present(spec.generation_rules()[r].precondition)) return r;
  }
  return std::nullopt;
}

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(what); }

}  // namespace

GameSpec::GameSpec(Definition definition) : def_(std::move(definition)) {
  if (def_.agents < 0) invalid("agent count must be non-negative");
  const int m = static_cast<int>(def_.coalitions.size());

  std::sort(def_.coalitions.begin(), def_.coalitions.end(),
            [](const Coalition& a, const Coalition& b) { return a.id < b.id; });
  for (int i = 0; i < m; ++i) {
    Coalition& c = def_.coalitions[i];
    if (c.id != i) {
      invalid("coalition ids must be 0.." + std::to_string(m - 1) + "; found id " +
              std::to_string(c.id) + " at position " + std::to_string(i));
    }
    if (c.members.empty()) invalid("coalition " + std::to_string(i) + " has no members");
    std::sort(c.members.begin(), c.members.end());
    if (std::adjacent_find(c.members.begin(), c.members.end()) != c.members.end()) {
      invalid("coalition " + std::to_string(i) + " lists an agent twice");
    }
    if (c.members.front() < 0 || c.members.back() >= def_.agents) {
      invalid("coalition " + std::to_string(i) + " references an agent outside 0.." +
              std::to_string(def_.agents - 1));
    }
    if (c.weight <= 0) invalid("coalition " + std::to_string(i) + " has non-positive weight");
  }

  auto check_ref = [&](CoalitionId id, const std::string& where) {
    if (id < 0 || id >= m) invalid(where + " references unknown coalition " + std::to_string(id));
  };

  sort_unique(def_.self_generating);
  for (CoalitionId id : def_.self_generating) check_ref(id, "self_generating");

  for (std::size_t r = 0; r < def_.generation_rules.size(); ++r) {
    Rule& rule = def_.generation_rules[r];
    const std::string where = "generation rule " + std::to_string(r);
    check_ref(rule.target, where);
    for (CoalitionId id : rule.precondition) check_ref(id, where);
    sort_unique(rule.precondition);
    if (rule.precondition.empty()) {
      invalid(where + " has an empty precondition; use self_generating instead");
    }
    if (std::binary_search(rule.precondition.begin(), rule.precondition.end(), rule.target)) {
      invalid(where + " contains its target in the precondition");
    }
  }
  for (std::size_t r = 0; r < def_.domination_rules.size(); ++r) {
    Rule& rule = def_.domination_rules[r];
    const std::string where = "domination rule " + std::to_string(r);
    check_ref(rule.target, where);
    for (CoalitionId id : rule.precondition) check_ref(id, where);
    sort_unique(rule.precondition);
  }

  self_gen_.assign(m, 0);
  for (CoalitionId id : def_.self_generating) self_gen_[id] = 1;
  gen_into_.assign(m, {});
  for (std::size_t r = 0; r < def_.generation_rules.size(); ++r) {
    gen_into_[def_.generation_rules[r].target].push_back(static_cast<int>(r));
  }
  dom_into_.assign(m, {});
  for (std::size_t r = 0; r < def_.domination_rules.size(); ++r) {
    dom_into_[def_.domination_rules[r].target].push_back(static_cast<int>(r));
  }
  of_agent_.assign(def_.agents, {});
  for (const Coalition& c : def_.coalitions) {
    for (AgentId a : c.members) of_agent_[a].push_back(c.id);
  }
  overlap_.assign(static_cast<std::size_t>(m) * m, 0);
  for (AgentId a = 0; a < def_.agents; ++a) {
    for (CoalitionId x : of_agent_[a]) {
      for (CoalitionId y : of_agent_[a]) overlap_[static_cast<std::size_t>(x) * m + y] = 1;
    }
  }

  std::vector<CoalitionId> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](CoalitionId a, CoalitionId b) { return weight(a) < weight(b); });
  rank_.assign(m, 0);
  for (int i = 1; i < m; ++i) {
    rank_[order[i]] = rank_[order[i - 1]] + (weight(order[i]) > weight(order[i - 1]) ? 1 : 0);
  }
}

bool is_feasible(const GameSpec& spec, const CoalitionStructure& s) {
  try {
    StateView view(spec, s);
    return true;
  } catch (const InfeasibleStart&) {
    return false;
  }
}

void require_feasible(const GameSpec& spec, const CoalitionStructure& s) {
  StateView view(spec, s);
}

std::string RuleViolation::describe() const {
  std::string head = (generation ? "generation rule " : "domination rule ") + std::to_string(rule);
  switch (kind) {
    case Kind::kGenerationPreconditionSize:
      return head + ": precondition must be exactly one coalition";
    case Kind::kGenerationNoOverlap:
      return head + ": precondition and target share no agent";
    case Kind::kDominationTargetInPrecondition:
      return head + ": target appears in its own precondition";
    case Kind::kDominationNoOverlap:
      return head + ": no precondition coalition overlaps the target";
  }
  return head;
}

ConsistencyReport check_consistency(const GameSpec& spec) {
  ConsistencyReport report;
  auto any_overlap = [&](const Rule& rule) {
    return std::any_of(rule.precondition.begin(), rule.precondition.end(), [&](CoalitionId p) {
      return p != rule.target && spec.overlaps(p, rule.target);
    });
  };
  const auto gen = spec.generation_rules();
  for (std::size_t r = 0; r < gen.size(); ++r) {
    if (gen[r].precondition.size() != 1) {
      report.violations.push_back(
          {RuleViolation::Kind::kGenerationPreconditionSize, true, static_cast<int>(r)});
    }
    if (!any_overlap(gen[r])) {
      report.violations.push_back(
          {RuleViolation::Kind::kGenerationNoOverlap, true, static_cast<int>(r)});
    }
  }
  const auto dom = spec.domination_rules();
  for (std::size_t r = 0; r < dom.size(); ++r) {
    const Rule& rule = dom[r];
    if (std::binary_search(rule.precondition.begin(), rule.precondition.end(), rule.target)) {
      report.violations.push_back(
          {RuleViolation::Kind::kDominationTargetInPrecondition, false, static_cast<int>(r)});
    }
    if (!any_overlap(rule)) {
      report.violations.push_back(
          {RuleViolation::Kind::kDominationNoOverlap, false, static_cast<int>(r)});
    }
  }
  for (const RuleViolation& v : report.violations) {
    (v.generation ? report.generation_ok : report.domination_ok) = false;
  }
  return report;
}

std::vector<CoalitionId> candidate_coalitions(const GameSpec& spec, const CoalitionStructure& s) {
  StateView view(spec, s);
  std::vector<CoalitionId> out;
  for (CoalitionId c = 0; c < spec.num_coalitions(); ++c) {
    if (generation_in(spec, view, c)) out.push_back(c);
  }
  return out;
}

bool is_dominated(const GameSpec& spec, const CoalitionStructure& s, CoalitionId c) {
  StateView view(spec, s);
  return dominated_in(spec, view, c);
}

std::vector<CoalitionId> blocking_coalitions(const GameSpec& spec, const CoalitionStructure& s) {
  StateView view(spec, s);
  std::vector<CoalitionId> out;
  for (CoalitionId c = 0; c < spec.num_coalitions(); ++c) {
    if (generation_in(spec, view, c) && !dominated_in(spec, view, c)) out.push_back(c);
  }
  return out;
}

bool is_blocking(const GameSpec& spec, const CoalitionStructure& s, CoalitionId c) {
  if (c < 0 || c >= spec.num_coalitions()) return false;
  StateView view(spec, s);
  return generation_in(spec, view, c) && !dominated_in(spec, view, c);
}

bool is_stable(const GameSpec& spec, const CoalitionStructure& s) {
  return blocking_coalitions(spec, s).empty();
}

std::optional<int> find_generation(const GameSpec& spec, const CoalitionStructure& s,
                                   CoalitionId c) {
  StateView view(spec, s);
  return generation_in(spec, view, c);
}

Resolution resolve(const GameSpec& spec, const CoalitionStructure& s, CoalitionId c) {
  if (!is_blocking(spec, s, c)) {
    throw NotBlocking("coalition " + std::to_string(c) + " is not blocking");
  }
  std::vector<char> present(spec.num_coalitions(), 0);
  for (CoalitionId id : s) present[id] = 1;
  present[c] = 1;
  auto all_present = [&](std::span<const CoalitionId> ids) {
    return std::all_of(ids.begin(), ids.end(), [&](CoalitionId x) { return present[x] != 0; });
  };

  Resolution out;
  std::vector<int> kept;
  kept.reserve(s.size() + 1);
  for (CoalitionId x : s) {
    bool removed = spec.include_weight_domination() ? spec.weight_dominates(c, x)
                                                    : spec.overlaps(c, x);
    if (!removed) {
      for (int r : spec.domination_rules_into(x)) {
        if (all_present(spec.domination_rules()[r].precondition)) {
          removed = true;
          break;
        }
      }
    }
    (removed ? out.deleted : kept).push_back(x);
  }
  kept.insert(std::lower_bound(kept.begin(), kept.end(), c), c);
  out.next = CoalitionStructure::from_sorted(std::move(kept));
  return out;
}

CoalitionStructure replay(const GameSpec& spec, const CoalitionStructure& s0,
                          const ImprovementTrace& trace) {
  try {
    require_feasible(spec, s0);
  } catch (const InfeasibleStart& e) {
    throw InvalidTrace(0, std::string("start structure: ") + e.what());
  }
  CoalitionStructure s = s0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    if (!is_blocking(spec, s, step.inserted)) {
      throw InvalidTrace(i, "coalition " + std::to_string(step.inserted) + " is not blocking");
    }
    if (step.rule == kSelfGenerated) {
      if (!spec.is_self_generating(step.inserted)) {
        throw InvalidTrace(i, "coalition " + std::to_string(step.inserted) +
                                  " is not self-generating");
      }
    } else {
      if (step.rule < 0 || step.rule >= static_cast<int>(spec.generation_rules().size())) {
        throw InvalidTrace(i, "unknown generation rule " + std::to_string(step.rule));
      }
      const Rule& rule = spec.generation_rules()[step.rule];
      if (rule.target != step.inserted) {
        throw InvalidTrace(i, "generation rule " + std::to_string(step.rule) +
                                  " does not target coalition " + std::to_string(step.inserted));
      }
      for (CoalitionId p : rule.precondition) {
        if (!s.contains(p)) {
          throw InvalidTrace(i, "precondition coalition " + std::to_string(p) + " is absent");
        }
      }
    }
    Resolution res = resolve(spec, s, step.inserted);
    std::vector<CoalitionId> recorded = step.deleted;
    std::sort(recorded.begin(), recorded.end());
    if (recorded != res.deleted) {
      throw InvalidTrace(i, "recorded deletions differ from the resolved step");
    }
    s = std::move(res.next);
  }
  return s;
}

SimulationResult simulate(const GameSpec& spec, const CoalitionStructure& s0,
                          const SimulationOptions& options) {
  require_feasible(spec, s0);
  SimulationResult result;
  Rng rng(options.seed);
  std::unordered_map<std::vector<int>, std::size_t, IdVectorHash> seen;
  CoalitionStructure s = s0;
  seen.emplace(s.key(), 0);
  while (true) {
    std::vector<CoalitionId> blocking = blocking_coalitions(spec, s);
    if (blocking.empty()) {
      result.outcome = SimulationOutcome::kStable;
      break;
    }
    if (result.trace.size() >= options.max_steps) {
      result.outcome = SimulationOutcome::kBudgetExceeded;
      break;
    }
    CoalitionId chosen = blocking.front();
    switch (options.policy) {
      case TieBreak::kLexMinId:
        break;
      case TieBreak::kMaxWeightThenMinId:
        for (CoalitionId c : blocking) {
          if (spec.weight_rank(c) > spec.weight_rank(chosen)) chosen = c;
        }
        break;
      case TieBreak::kSeededRandom:
        chosen = blocking[rng.below(blocking.size())];
        break;
    }
    int rule = *find_generation(spec, s, chosen);
    Resolution res = resolve(spec, s, chosen);
    result.trace.steps.push_back({chosen, res.deleted, rule});
    s = std::move(res.next);
    auto [it, inserted] = seen.emplace(s.key(), result.trace.size());
    if (!inserted) {
      result.outcome = SimulationOutcome::kCycle;
      result.cycle_start = it->second;
      result.cycle_period = result.trace.size() - it->second;
      break;
    }
  }
  result.final_state = std::move(s);
  return result;
}

}  // namespace matchdyn
