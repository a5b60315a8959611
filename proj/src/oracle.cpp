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

#include "matchdyn/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>

namespace matchdyn {
namespace {

using StateIndex = std::unordered_map<StateKey, std::size_t, IdVectorHash>;

std::vector<int> difference(const StateKey& a, const StateKey& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Successor lists for one breadth-first layer, split across workers.
std::vector<std::vector<Successor>> expand_layer(const Dynamics& dyn,
                                                 const std::vector<StateKey>& states,
                                                 const std::vector<std::size_t>& layer,
                                                 unsigned workers) {
  std::vector<std::vector<Successor>> out(layer.size());
  const unsigned threads =
      std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(layer.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < layer.size(); ++i) out[i] = dyn.successors(states[layer[i]]);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < layer.size(); i += threads) {
          out[i] = dyn.successors(states[layer[i]]);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Search {
  TransitionGraph graph;
  std::vector<std::size_t> parent;
  std::vector<int> parent_label;
  std::optional<std::size_t> found;
};

// Layer-synchronous breadth-first search. `accept` sees each state with its
// successors when the state is expanded; the first accepted state ends the
// search. Without `accept` the whole closure is built.
Search bfs(const Dynamics& dyn, const StateKey& s0, const ExploreOptions& options,
           const std::function<bool(const StateKey&, const std::vector<Successor>&)>& accept) {
  if (options.node_budget < 1) throw ValidationError("node budget must be at least 1");
  if (!dyn.is_feasible(s0)) throw InfeasibleStart("start state is infeasible");
  Search search;
  TransitionGraph& g = search.graph;
  StateIndex index;
  g.states.push_back(s0);
  index.emplace(s0, 0);
  search.parent.push_back(0);
  search.parent_label.push_back(-1);

  std::vector<std::size_t> layer{0};
  while (!layer.empty()) {
    auto succ = expand_layer(dyn, g.states, layer, options.workers);
    std::vector<std::size_t> next_layer;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const std::size_t from = layer[i];
      if (accept && accept(g.states[from], succ[i])) {
        search.found = from;
        return search;
      }
      for (Successor& s : succ[i]) {
        auto it = index.find(s.next);
        std::size_t to;
        if (it != index.end()) {
          to = it->second;
        } else {
          if (g.states.size() >= options.node_budget) {
            g.overflow = true;
            continue;
          }
          to = g.states.size();
          index.emplace(s.next, to);
          g.states.push_back(std::move(s.next));
          search.parent.push_back(from);
          search.parent_label.push_back(s.label);
          next_layer.push_back(to);
        }
        g.edges.push_back({from, to, s.label});
      }
    }
    layer = std::move(next_layer);
  }
  return search;
}

Reachability finish(Search search, const ExploreOptions& options) {
  Reachability out;
  if (!search.found) {
    if (search.graph.overflow) throw BudgetExceeded(options.node_budget, std::move(search.graph));
    return out;
  }
  out.reachable = true;
  std::vector<Transition> path;
  for (std::size_t x = *search.found; x != 0; x = search.parent[x]) {
    path.push_back({search.parent_label[x], search.graph.states[x]});
  }
  std::reverse(path.begin(), path.end());
  out.shortest_length = path.size();
  out.witness = std::move(path);
  return out;
}

template <typename Fits>
void enumerate_subsets(int count, std::size_t limit, std::vector<StateKey>& out, Fits fits,
                       const std::function<void(int, bool)>& toggle) {
  StateKey current;
  std::function<void(int)> rec = [&](int i) {
    if (i == count) {
      if (out.size() >= limit) {
        throw TooLarge("more than " + std::to_string(limit) + " feasible states");
      }
      out.push_back(current);
      return;
    }
    rec(i + 1);
    if (fits(i)) {
      toggle(i, true);
      current.push_back(i);
      rec(i + 1);
      current.pop_back();
      toggle(i, false);
    }
  };
  rec(0);
}

}  // namespace

std::vector<Successor> GameDynamics::successors(const StateKey& s) const {
  CoalitionStructure structure = CoalitionStructure::from_sorted(s);
  std::vector<Successor> out;
  for (CoalitionId c : blocking_coalitions(spec_, structure)) {
    out.push_back({c, resolve(spec_, structure, c).next.key()});
  }
  return out;
}

std::vector<StateKey> GameDynamics::feasible_states(std::size_t limit) const {
  std::vector<int> used(spec_.num_agents(), 0);
  std::vector<StateKey> out;
  auto fits = [&](int c) {
    for (AgentId a : spec_.coalition(c).members) {
      if (used[a]) return false;
    }
    return true;
  };
  auto toggle = [&](int c, bool on) {
    for (AgentId a : spec_.coalition(c).members) used[a] = on ? 1 : 0;
  };
  enumerate_subsets(spec_.num_coalitions(), limit, out, fits, toggle);
  return out;
}

bool GameDynamics::is_feasible(const StateKey& s) const {
  if (!std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end()) {
    return false;
  }
  return matchdyn::is_feasible(spec_, CoalitionStructure::from_sorted(s));
}

std::vector<Successor> MatchingDynamics::successors(const StateKey& s) const {
  Matching m = Matching::from_sorted(s);
  std::vector<Successor> out;
  for (EdgeId e : blocking_pairs(inst_, m)) {
    std::vector<StateKey> nexts;
    for (const Move& mv : improving_moves(inst_, m, e)) {
      StateKey next = difference(s, mv.dropped);
      next.insert(std::lower_bound(next.begin(), next.end(), e), e);
      nexts.push_back(std::move(next));
    }
    std::sort(nexts.begin(), nexts.end());
    nexts.erase(std::unique(nexts.begin(), nexts.end()), nexts.end());
    for (StateKey& next : nexts) out.push_back({e, std::move(next)});
  }
  return out;
}

std::vector<StateKey> MatchingDynamics::feasible_states(std::size_t limit) const {
  std::vector<int> degree(inst_.num_vertices(), 0);
  std::vector<StateKey> out;
  auto fits = [&](int e) {
    return degree[inst_.edge(e).u] < inst_.k() && degree[inst_.edge(e).v] < inst_.k();
  };
  auto toggle = [&](int e, bool on) {
    int delta = on ? 1 : -1;
    degree[inst_.edge(e).u] += delta;
    degree[inst_.edge(e).v] += delta;
  };
  enumerate_subsets(inst_.num_edges(), limit, out, fits, toggle);
  return out;
}

bool MatchingDynamics::is_feasible(const StateKey& s) const {
  if (!std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end()) {
    return false;
  }
  return matchdyn::is_feasible(inst_, Matching::from_sorted(s));
}

std::optional<std::size_t> TransitionGraph::index_of(const StateKey& s) const {
  auto it = std::find(states.begin(), states.end(), s);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

std::vector<std::size_t> TransitionGraph::out_degree() const {
  std::vector<std::size_t> out(states.size(), 0);
  for (const TransitionEdge& e : edges) ++out[e.from];
  return out;
}

std::vector<std::size_t> TransitionGraph::sinks() const {
  std::vector<std::size_t> degree = out_degree();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < degree.size(); ++i) {
    if (degree[i] == 0) out.push_back(i);
  }
  return out;
}

std::size_t default_budget() {
  if (const char* env = std::getenv("MATCHDYN_BUDGET")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return 1000000;
}

TransitionGraph explore(const Dynamics& dyn, const StateKey& s0, const ExploreOptions& options) {
  Search search = bfs(dyn, s0, options, nullptr);
  if (search.graph.overflow) throw BudgetExceeded(options.node_budget, std::move(search.graph));
  return std::move(search.graph);
}

Reachability reachable(const Dynamics& dyn, const StateKey& s0, const StateKey& target,
                       const ExploreOptions& options) {
  if (!dyn.is_feasible(target)) throw InfeasibleStart("target state is infeasible");
  Search search = bfs(dyn, s0, options,
                      [&](const StateKey& s, const std::vector<Successor>&) { return s == target; });
  return finish(std::move(search), options);
}

Reachability shortest_to_stable(const Dynamics& dyn, const StateKey& s0,
                                const ExploreOptions& options) {
  Search search = bfs(dyn, s0, options, [](const StateKey&, const std::vector<Successor>& succ) {
    return succ.empty();
  });
  return finish(std::move(search), options);
}

std::vector<StateKey> enumerate_stable(const Dynamics& dyn, std::size_t limit) {
  std::vector<StateKey> out;
  for (StateKey& s : dyn.feasible_states(limit)) {
    if (dyn.successors(s).empty()) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ImprovementTrace to_trace(const GameSpec& spec, const StateKey& s0,
                          const std::vector<Transition>& path) {
  ImprovementTrace trace;
  StateKey s = s0;
  for (const Transition& t : path) {
    auto rule = find_generation(spec, CoalitionStructure::from_sorted(s), t.label);
    trace.steps.push_back({t.label, difference(s, t.next), rule.value_or(kSelfGenerated)});
    s = t.next;
  }
  return trace;
}

MatchingTrace to_trace(const MatchingInstance& inst, const StateKey& m0,
                       const std::vector<Transition>& path) {
  MatchingTrace trace;
  StateKey m = m0;
  for (const Transition& t : path) {
    trace.steps.push_back({t.label, difference(m, t.next)});
    m = t.next;
  }
  replay(inst, Matching::from_sorted(m0), trace);
  return trace;
}

}  // namespace matchdyn
