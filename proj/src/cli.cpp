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

#include "matchdyn/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "matchdyn/bipartite.hpp"
#include "matchdyn/dot.hpp"
#include "matchdyn/embedding.hpp"
#include "matchdyn/errors.hpp"
#include "matchdyn/factory.hpp"
#include "matchdyn/movement_graph.hpp"
#include "matchdyn/oracle.hpp"
#include "matchdyn/sequencer.hpp"
#include "matchdyn/serialize.hpp"

namespace matchdyn {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_ids(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("'" + text + "' is not a comma-separated id list");
    }
  }
  return out;
}

// The state given on the command line, else the document's field, else empty.
std::vector<int> state_arg(const Json& doc, const std::optional<std::string>& flag,
                           std::string_view field) {
  std::vector<int> ids;
  if (flag) {
    ids = parse_ids(*flag);
  } else if (auto from_doc = optional_state(doc, field)) {
    ids = *from_doc;
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool is_game(const Json& doc) { return doc.is_object() && doc.contains("coalitions"); }
bool is_matching(const Json& doc) { return doc.is_object() && doc.contains("edges"); }

void require_kind(const Json& doc) {
  if (!is_game(doc) && !is_matching(doc)) {
    throw ValidationError("document is neither a game (\"coalitions\") nor a matching instance "
                          "(\"edges\")");
  }
}

GameSpec require_game(const Json& doc, std::string_view command) {
  if (!is_game(doc)) {
    throw ValidationError(std::string(command) + " needs a game document; use 'embed' to turn a "
                          "matching instance into one");
  }
  return game_spec_from_json(doc);
}

Json game_steps(const ImprovementTrace& trace) {
  Json steps = Json::array();
  for (const TraceStep& s : trace.steps) steps.push_back(to_json(s));
  return steps;
}

Json matching_steps(const MatchingTrace& trace) {
  Json steps = Json::array();
  for (const Move& m : trace.steps) steps.push_back(to_json(m));
  return steps;
}

std::string_view outcome_name(SimulationOutcome o) {
  switch (o) {
    case SimulationOutcome::kStable: return "stable";
    case SimulationOutcome::kCycle: return "cycle";
    case SimulationOutcome::kBudgetExceeded: return "budget_exceeded";
  }
  return "stable";
}

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::optional<std::string> start;
  std::optional<std::string> target;
  std::optional<std::string> trace_in;
  std::optional<std::string> trace_out;
  std::string policy = "lex";
  std::optional<std::uint64_t> seed;
  std::size_t max_steps = 100000;
  unsigned workers = 1;
  std::string format;
  bool require_consistent = false;
  bool figure_style = false;
  bool weight_domination = false;
  std::size_t limit = 1u << 20;
  int k = 1;
  std::string formula;
  std::string variant;
  int n = 6;
  int m = 8;
  double density = 0.3;
};

int cmd_validate(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  require_kind(doc);
  Json result;
  if (is_game(doc)) {
    GameSpec spec = game_spec_from_json(doc);
    ConsistencyReport report = check_consistency(spec);
    Json violations = Json::array();
    for (const RuleViolation& v : report.violations) {
      violations.push_back({{"generation", v.generation}, {"rule", v.rule}, {"message", v.describe()}});
    }
    result = {{"kind", "game"},
              {"valid", true},
              {"generation_ok", report.generation_ok},
              {"domination_ok", report.domination_ok},
              {"consistent", report.consistent()},
              {"violations", violations}};
    if (auto start = optional_state(doc, "start")) {
      result["start_feasible"] = is_feasible(spec, CoalitionStructure(*start));
    }
    write_text(o.output, dump(result), out);
    if (o.require_consistent && !report.consistent()) {
      throw InconsistentSpec("rules are inconsistent; " + report.violations.front().describe());
    }
    return kExitOk;
  }
  MatchingInstance inst = matching_instance_from_json(doc);
  result = {{"kind", "matching"}, {"valid", true}, {"variant", variant_name(inst.variant())}};
  for (std::string_view name : {"start", "target"}) {
    if (auto state = optional_state(doc, name)) {
      result[std::string(name) + "_feasible"] = is_feasible(inst, Matching(*state));
    }
  }
  write_text(o.output, dump(result), out);
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  GameSpec spec = require_game(doc, "simulate");
  SimulationOptions sim;
  if (o.policy == "lex") {
    sim.policy = TieBreak::kLexMinId;
  } else if (o.policy == "maxweight") {
    sim.policy = TieBreak::kMaxWeightThenMinId;
  } else if (o.policy == "random") {
    if (!o.seed) throw UsageError("--policy random needs --seed");
    sim.policy = TieBreak::kSeededRandom;
  } else {
    throw UsageError("unknown policy '" + o.policy + "'");
  }
  sim.seed = o.seed.value_or(0);
  sim.max_steps = o.max_steps;
  CoalitionStructure s0(state_arg(doc, o.start, "start"));
  SimulationResult r = simulate(spec, s0, sim);
  Json result = {{"outcome", outcome_name(r.outcome)},
                 {"cycle", r.outcome == SimulationOutcome::kCycle},
                 {"steps", r.trace.size()},
                 {"final_state", ids_to_json(r.final_state.ids())}};
  if (r.outcome == SimulationOutcome::kCycle) {
    result["cycle_start"] = r.cycle_start;
    result["cycle_period"] = r.cycle_period;
  }
  if (o.trace_out) write_text(*o.trace_out, trace_to_jsonl(r.trace), out);
  write_text(o.output, dump(result), out);
  return kExitOk;
}

int cmd_converge(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  GameSpec spec = require_game(doc, "converge");
  ConvergenceReport report = converge(spec, CoalitionStructure(state_arg(doc, o.start, "start")));
  Json result = to_json(report);
  result["stable"] = is_stable(spec, report.final_state);
  if (o.trace_out) write_text(*o.trace_out, trace_to_jsonl(report.trace), out);
  write_text(o.output, dump(result), out);
  return kExitOk;
}

int cmd_truncate(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  GameSpec spec = require_game(doc, "truncate");
  if (!o.trace_in) throw UsageError("truncate needs --trace");
  ImprovementTrace trace = trace_from_jsonl(read_text(*o.trace_in));
  CoalitionStructure s0(state_arg(doc, o.start, "start"));
  ImprovementTrace shorter = truncate(spec, s0, trace);
  CoalitionStructure end = replay(spec, s0, shorter);
  Json result = {{"original_steps", trace.size()},
                 {"steps", shorter.size()},
                 {"bound", truncation_bound(spec, s0, end)},
                 {"end_state", ids_to_json(end.ids())}};
  if (o.trace_out) write_text(*o.trace_out, trace_to_jsonl(shorter), out);
  write_text(o.output, dump(result), out);
  return kExitOk;
}

int cmd_embed(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  if (!is_matching(doc)) throw ValidationError("embed needs a matching instance");
  MatchingInstance inst = matching_instance_from_json(doc);
  Embedding emb = embed(inst);
  Json result = to_json(emb.spec);
  for (std::string_view name : {"start", "target"}) {
    if (auto state = optional_state(doc, name)) {
      result[std::string(name)] = ids_to_json(emb.state_map(inst, Matching(*state)).ids());
    }
  }
  write_text(o.output, dump(result), out);
  return kExitOk;
}

int cmd_bipartite(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  if (!is_matching(doc)) throw ValidationError("bipartite needs a matching instance");
  MatchingInstance inst = matching_instance_from_json(doc);
  TwoPhaseResult r = two_phase_converge(inst, Matching(state_arg(doc, o.start, "start")));
  Json result = to_json(r);
  result["stable"] = is_variant_stable(inst, r.final_matching);
  write_text(o.output, dump(result), out);
  return kExitOk;
}

// Holds whichever model the document describes, with its dynamics.
struct Model {
  std::unique_ptr<GameSpec> game;
  std::unique_ptr<MatchingInstance> matching;
  std::unique_ptr<Dynamics> dynamics;

  explicit Model(const Json& doc) {
    require_kind(doc);
    if (is_game(doc)) {
      game = std::make_unique<GameSpec>(game_spec_from_json(doc));
      dynamics = std::make_unique<GameDynamics>(*game);
    } else {
      matching = std::make_unique<MatchingInstance>(matching_instance_from_json(doc));
      dynamics = std::make_unique<MatchingDynamics>(*matching);
    }
  }

  Json witness(const StateKey& s0, const std::vector<Transition>& path) const {
    return game ? game_steps(to_trace(*game, s0, path))
                : matching_steps(to_trace(*matching, s0, path));
  }
};

int cmd_reach(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  Model model(doc);
  StateKey s0 = state_arg(doc, o.start, "start");
  StateKey target = state_arg(doc, o.target, "target");
  ExploreOptions eo;
  eo.workers = o.workers;
  Reachability r = reachable(*model.dynamics, s0, target, eo);
  Json result = {{"reachable", r.reachable}};
  result["shortest_length"] = r.shortest_length ? Json(*r.shortest_length) : Json(nullptr);
  result["witness"] = r.reachable ? model.witness(s0, r.witness) : Json(nullptr);
  write_text(o.output, dump(result), out);
  return kExitOk;
}

int cmd_stable(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  Model model(doc);
  std::vector<StateKey> states = enumerate_stable(*model.dynamics, o.limit);
  Json list = Json::array();
  for (const StateKey& s : states) list.push_back(s);
  write_text(o.output, dump({{"count", states.size()}, {"stable_states", list}}), out);
  return kExitOk;
}

int cmd_explore(const Options& o, std::ostream& out, std::ostream& err) {
  Json doc = parse_json(read_text(o.input));
  Model model(doc);
  const std::string format = o.format.empty() ? "json" : o.format;
  ExploreOptions eo;
  eo.workers = o.workers;
  auto emit = [&](const TransitionGraph& g) {
    write_text(o.output, format == "dot" ? to_dot(g) : dump(to_json(g)), out);
  };
  try {
    emit(explore(*model.dynamics, state_arg(doc, o.start, "start"), eo));
  } catch (const BudgetExceeded& e) {
    emit(e.graph());
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  Json doc = parse_json(read_text(o.input));
  require_kind(doc);
  std::optional<GameSpec> spec;
  std::optional<CoalitionStructure> marks;
  if (is_game(doc)) {
    spec.emplace(game_spec_from_json(doc));
    if (o.start || doc.contains("start")) marks.emplace(state_arg(doc, o.start, "start"));
  } else {
    MatchingInstance inst = matching_instance_from_json(doc);
    Embedding emb = embed(inst);
    if (o.start || doc.contains("start")) {
      marks.emplace(emb.state_map(inst, Matching(state_arg(doc, o.start, "start"))));
    }
    spec.emplace(std::move(emb.spec));
  }
  MovementGraph g = MovementGraph::build(*spec);
  const std::string format = o.format.empty() ? "dot" : o.format;
  if (format == "json") {
    Json edges = Json::array();
    for (const ExchangeEdge& e : g.exchange_edges()) {
      edges.push_back({{"from", e.from}, {"to", e.to}, {"rule", e.rule}});
    }
    Json hyper = Json::array();
    for (const Hyperedge& h : o.weight_domination ? g.all_hyperedges() : g.stored_hyperedges()) {
      hyper.push_back({{"sources", h.sources}, {"target", h.target}, {"rule", h.rule}});
    }
    Json generators = Json::array();
    for (CoalitionId v = 0; v < g.num_vertices(); ++v) {
      if (g.is_generator(v)) generators.push_back(v);
    }
    write_text(o.output,
               dump({{"vertices", g.num_vertices()},
                     {"generators", generators},
                     {"exchange_edges", edges},
                     {"hyperedges", hyper}}),
               out);
    return kExitOk;
  }
  DotStyle style{o.figure_style, o.weight_domination};
  MarkingState marking{marks.value_or(CoalitionStructure{})};
  write_text(o.output, to_dot(g, style, marks ? &marking : nullptr), out);
  return kExitOk;
}

int cmd_gen(const std::string& kind, const Options& o, std::ostream& out) {
  Json doc;
  if (kind == "cycle") {
    GameInstance g = gen_cycle_example();
    doc = to_json(g.spec);
    doc["start"] = ids_to_json(g.start.ids());
  } else if (kind == "expchain") {
    GameInstance g = gen_exponential_chain(o.k);
    doc = to_json(g.spec);
    doc["start"] = ids_to_json(g.start.ids());
  } else if (kind == "sat") {
    SatReduction r = gen_sat_reduction(parse_dimacs(read_text(o.formula)),
                                       parse_sat_variant(o.variant));
    doc = to_json(r.instance);
    doc["start"] = ids_to_json(r.start.ids());
    doc["target"] = ids_to_json(r.target.ids());
  } else {
    if (!o.seed) throw UsageError("gen random needs --seed");
    GameSpec spec = gen_random_consistent(o.n, o.m, o.density, *o.seed);
    doc = to_json(spec);
    doc["start"] = ids_to_json(random_structure(spec, *o.seed).ids());
  }
  write_text(o.output, dump(doc), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coalition formation and matching dynamics toolkit", "matchdyn"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Game or instance JSON, - for stdin")->required();
    sub->add_option("-o,--output", o.output, "Output file, - for stdout");
  };
  auto start = [&](CLI::App* sub) {
    sub->add_option("--start", o.start, "Start state as comma-separated ids");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a document and its rule consistency");
  input(validate);
  validate->add_flag("--require-consistent", o.require_consistent,
                     "Fail when rules are inconsistent");

  CLI::App* sim = app.add_subcommand("simulate", "Run improvement steps under a tie-break policy");
  input(sim);
  start(sim);
  sim->add_option("--policy", o.policy, "lex, maxweight or random")
      ->check(CLI::IsMember({"lex", "maxweight", "random"}));
  sim->add_option("--seed", o.seed, "Seed for the random policy");
  sim->add_option("--max-steps", o.max_steps, "Step budget");
  sim->add_option("--trace-out", o.trace_out, "Write the trace as JSON lines");

  CLI::App* conv = app.add_subcommand("converge", "Compute a polynomial path to stability");
  input(conv);
  start(conv);
  conv->add_option("--trace-out", o.trace_out, "Write the trace as JSON lines");

  CLI::App* trunc = app.add_subcommand("truncate", "Shorten an improvement sequence");
  input(trunc);
  start(trunc);
  trunc->add_option("--trace", o.trace_in, "Trace to shorten, JSON lines")->required();
  trunc->add_option("--trace-out", o.trace_out, "Write the shortened trace");

  CLI::App* emb = app.add_subcommand("embed", "Encode a matching instance as a game");
  input(emb);

  CLI::App* bip = app.add_subcommand("bipartite", "Two-phase path to stability");
  input(bip);
  start(bip);

  CLI::App* reach = app.add_subcommand("reach", "Decide reachability by exhaustive search");
  input(reach);
  start(reach);
  reach->add_option("--target", o.target, "Target state as comma-separated ids");
  reach->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);

  CLI::App* stable = app.add_subcommand("stable", "List every stable state");
  input(stable);
  stable->add_option("--limit", o.limit, "Maximum number of feasible states to enumerate");

  CLI::App* explore_cmd = app.add_subcommand("explore", "Build the reachable transition graph");
  input(explore_cmd);
  start(explore_cmd);
  explore_cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  explore_cmd->add_option("--format", o.format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));

  CLI::App* export_dot = app.add_subcommand("export-dot", "Render the movement graph");
  input(export_dot);
  start(export_dot);
  export_dot->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"json", "dot"}));
  export_dot->add_flag("--figure-style", o.figure_style, "Thick domination, dashed exchange edges");
  export_dot->add_flag("--weight-domination", o.weight_domination,
                       "Also draw weight-domination hyperedges");

  CLI::App* gen = app.add_subcommand("gen", "Generate constructed or random instances");
  gen->require_subcommand(1);
  CLI::App* gen_cycle = gen->add_subcommand("cycle", "Three pairs that cycle forever");
  CLI::App* gen_chain = gen->add_subcommand("expchain", "Chained gadgets with long paths");
  gen_chain->add_option("--k", o.k, "Number of gadgets")->required()->check(CLI::PositiveNumber);
  CLI::App* gen_sat = gen->add_subcommand("sat", "Reachability instance from a 3-CNF formula");
  gen_sat->add_option("--formula", o.formula, "DIMACS file")->required();
  gen_sat->add_option("--variant", o.variant,
                      "social, local, considerate, friendship, ties or strict")
      ->required();
  CLI::App* gen_random = gen->add_subcommand("random", "Random consistent game");
  gen_random->add_option("--n", o.n, "Agents")->check(CLI::PositiveNumber);
  gen_random->add_option("--m", o.m, "Coalitions")->check(CLI::PositiveNumber);
  gen_random->add_option("--seed", o.seed, "Seed")->required();
  gen_random->add_option("--density", o.density, "Rule density in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  for (CLI::App* sub : {gen_cycle, gen_chain, gen_sat, gen_random}) {
    sub->add_option("-o,--output", o.output, "Output file, - for stdout");
  }

  std::vector<std::string> argv_store{"matchdyn"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (conv->parsed()) return cmd_converge(o, out);
    if (trunc->parsed()) return cmd_truncate(o, out);
    if (emb->parsed()) return cmd_embed(o, out);
    if (bip->parsed()) return cmd_bipartite(o, out);
    if (reach->parsed()) return cmd_reach(o, out);
    if (stable->parsed()) return cmd_stable(o, out);
    if (explore_cmd->parsed()) return cmd_explore(o, out, err);
    if (export_dot->parsed()) return cmd_export_dot(o, out);
    if (gen_cycle->parsed()) return cmd_gen("cycle", o, out);
    if (gen_chain->parsed()) return cmd_gen("expchain", o, out);
    if (gen_sat->parsed()) return cmd_gen("sat", o, out);
    if (gen_random->parsed()) return cmd_gen("random", o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace matchdyn
