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

#include "matchdyn/sequencer.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "matchdyn/movement_graph.hpp"

namespace matchdyn {
namespace {

class Runner {
 public:
  Runner(const MovementGraph& g, const CoalitionStructure& s0) : g_(g), m_{s0} {}

  bool apply(const Action& action) {
    std::vector<CoalitionId> lost;
    MarkingState next;
    try {
      next = step(g_, m_, action, &lost);
    } catch (const IllegalAction&) {
      return false;
    }
    int rule = action.kind == Action::Kind::kCreateAt ? kSelfGenerated
                                                      : g_.exchange_edges()[action.edge].rule;
    trace_.steps.push_back({action.vertex, std::move(lost), rule});
    m_ = std::move(next);
    return true;
  }

  // Creates a marking at the generator and walks it along the path. Stops
  // early when a later move is no longer legal.
  void walk(CoalitionId generator, const ReachablePosition& position) {
    if (!apply(Action::create_at(generator))) return;
    for (int e : position.path) {
      if (!apply(Action::move_along(e, g_.exchange_edges()[e].to))) return;
    }
  }

  const MarkingState& marking() const { return m_; }
  ImprovementTrace& trace() { return trace_; }

 private:
  const MovementGraph& g_;
  MarkingState m_;
  ImprovementTrace trace_;
};

std::optional<Action> upgrade_move(const MovementGraph& g, const MarkingState& m) {
  for (CoalitionId x : m.marked) {
    for (int e : g.out_edges(x)) {
      CoalitionId y = g.exchange_edges()[e].to;
      if (!m.marked.contains(y) && undominated(g, m, y)) return Action::move_along(e, y);
    }
  }
  return std::nullopt;
}

}  // namespace

ConvergenceReport converge(const GameSpec& spec, const CoalitionStructure& s0) {
  MovementGraph g = MovementGraph::build(spec);
  require_feasible(spec, s0);
  ConvergenceReport report;
  const std::size_t n = spec.num_agents();
  const std::size_t m = spec.num_coalitions();
  report.bound_phase1 = n * m * m;
  report.bound_phase2 = n * m;
  const std::size_t guard = 4 * report.bound() + 64;

  Runner run(g, s0);
  auto check_guard = [&] {
    if (run.trace().size() > guard) throw std::logic_error("converge exceeded its step guard");
  };

  while (true) {
    check_guard();
    if (auto move = upgrade_move(g, run.marking())) {
      run.apply(*move);
      continue;
    }
    const MarkingState& marks = run.marking();
    bool walked = false;
    for (const auto& [generator, positions] : reachable_positions(g, marks)) {
      for (const ReachablePosition& p : positions) {
        bool pushes_out = std::any_of(marks.marked.begin(), marks.marked.end(), [&](CoalitionId u) {
          return spec.weight_dominates(p.vertex, u);
        });
        if (pushes_out) {
          run.walk(generator, p);
          walked = true;
          break;
        }
      }
      if (walked) break;
    }
    if (!walked) break;
  }
  report.phase1_steps = run.trace().size();

  while (true) {
    check_guard();
    std::optional<std::pair<CoalitionId, ReachablePosition>> best;
    for (const auto& [generator, positions] : reachable_positions(g, run.marking())) {
      for (const ReachablePosition& p : positions) {
        if (!best || spec.weight_rank(p.vertex) > spec.weight_rank(best->second.vertex) ||
            (spec.weight_rank(p.vertex) == spec.weight_rank(best->second.vertex) &&
             p.vertex < best->second.vertex)) {
          best.emplace(generator, p);
        }
      }
    }
    if (!best) break;
    run.walk(best->first, best->second);
  }
  report.phase2_steps = run.trace().size() - report.phase1_steps;
  report.final_state = run.marking().marked;
  report.trace = std::move(run.trace());
  return report;
}

std::size_t truncation_bound(const GameSpec& spec, const CoalitionStructure& s0,
                             const CoalitionStructure& s_end) {
  const std::size_t m = spec.num_coalitions();
  return s0.size() * m * m + s_end.size() * m;
}

ImprovementTrace truncate(const GameSpec& spec, const CoalitionStructure& s0,
                          const ImprovementTrace& trace) {
  const CoalitionStructure s_end = replay(spec, s0, trace);

  // Instances 0..|s0|-1 are the start coalitions; instance |s0|+i is the
  // coalition inserted by step i.
  const std::size_t base = s0.size();
  const std::size_t count = base + trace.size();
  std::vector<int> current(spec.num_coalitions(), -1);
  std::vector<std::vector<int>> predecessors(count);
  std::vector<int> killer(count, -1);
  std::vector<std::vector<int>> kill_support(count);

  for (std::size_t i = 0; i < base; ++i) current[s0.ids()[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceStep& st = trace.steps[i];
    const int inst = static_cast<int>(base + i);
    if (st.rule != kSelfGenerated) {
      for (CoalitionId p : spec.generation_rules()[st.rule].precondition) {
        predecessors[inst].push_back(current[p]);
      }
    }
    auto instance_of = [&](CoalitionId c) { return c == st.inserted ? inst : current[c]; };
    for (CoalitionId x : st.deleted) {
      const int victim = current[x];
      killer[victim] = static_cast<int>(i);
      bool by_inserted = spec.include_weight_domination() ? spec.weight_dominates(st.inserted, x)
                                                          : spec.overlaps(st.inserted, x);
      if (by_inserted) continue;
      for (int r : spec.domination_rules_into(x)) {
        const auto& pre = spec.domination_rules()[r].precondition;
        if (std::all_of(pre.begin(), pre.end(),
                        [&](CoalitionId p) { return instance_of(p) >= 0; })) {
          for (CoalitionId p : pre) kill_support[victim].push_back(instance_of(p));
          break;
        }
      }
    }
    for (CoalitionId x : st.deleted) current[x] = -1;
    current[st.inserted] = inst;
  }

  std::vector<char> useful(count, 0);
  std::vector<int> work;
  auto mark = [&](int inst) {
    if (!useful[inst]) {
      useful[inst] = 1;
      work.push_back(inst);
    }
  };
  for (std::size_t i = 0; i < base; ++i) mark(static_cast<int>(i));
  for (int inst : current) {
    if (inst >= 0) mark(inst);
  }
  while (!work.empty()) {
    int inst = work.back();
    work.pop_back();
    for (int p : predecessors[inst]) mark(p);
    if (killer[inst] >= 0) {
      mark(static_cast<int>(base) + killer[inst]);
      for (int p : kill_support[inst]) mark(p);
    }
  }

  ImprovementTrace out;
  CoalitionStructure s = s0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!useful[base + i]) continue;
    const TraceStep& st = trace.steps[i];
    Resolution res = resolve(spec, s, st.inserted);
    out.steps.push_back({st.inserted, res.deleted, st.rule});
    s = std::move(res.next);
  }
  if (s != s_end) throw std::logic_error("truncated trace changed the end structure");
  return out;
}

}  // namespace matchdyn
