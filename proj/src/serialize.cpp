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

#include "matchdyn/serialize.hpp"

#include <sstream>

#include "matchdyn/errors.hpp"

namespace matchdyn {
namespace {

const Json& field(const Json& j, std::string_view name) {
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  auto it = j.find(std::string(name));
  if (it == j.end()) throw ValidationError("missing field '" + std::string(name) + "'");
  return *it;
}

int int_field(const Json& j, std::string_view name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) {
    throw ValidationError("field '" + std::string(name) + "' must be an integer");
  }
  return v.get<int>();
}

int as_int(const Json& v, std::string_view where) {
  if (!v.is_number_integer()) throw ValidationError(std::string(where) + " must be an integer");
  return v.get<int>();
}

template <typename F>
void each_line(std::string_view text, F f) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      f(parse_json(line));
    } catch (const ValidationError& e) {
      throw ValidationError("trace line " + std::to_string(n + 1) + ": " + e.what());
    }
    ++n;
  }
}

std::string consider_name(ConsiderateMode mode) {
  return mode == ConsiderateMode::kSymmetric ? "symmetric" : "proposer";
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ValidationError("rational values must be integers or strings such as \"3/2\"");
}

Json ids_to_json(std::span<const int> ids) { return Json(std::vector<int>(ids.begin(), ids.end())); }

std::vector<int> ids_from_json(const Json& j, std::string_view where) {
  if (!j.is_array()) throw ValidationError(std::string(where) + " must be an array of ids");
  std::vector<int> out;
  for (const Json& x : j) out.push_back(as_int(x, where));
  return out;
}

std::optional<std::vector<int>> optional_state(const Json& doc, std::string_view name) {
  if (!doc.is_object()) return std::nullopt;
  auto it = doc.find(std::string(name));
  if (it == doc.end() || it->is_null()) return std::nullopt;
  return ids_from_json(*it, name);
}

Json to_json(const GameSpec& spec) {
  const GameSpec::Definition& def = spec.definition();
  Json coalitions = Json::array();
  for (const Coalition& c : def.coalitions) {
    coalitions.push_back({{"id", c.id}, {"members", c.members}, {"weight", rational_to_json(c.weight)}});
  }
  auto rules = [](const std::vector<Rule>& list) {
    Json out = Json::array();
    for (const Rule& r : list) out.push_back({{"pre", r.precondition}, {"target", r.target}});
    return out;
  };
  return {{"agents", def.agents},
          {"coalitions", coalitions},
          {"self_generating", def.self_generating},
          {"generation_rules", rules(def.generation_rules)},
          {"domination_rules", rules(def.domination_rules)},
          {"include_weight_domination", def.include_weight_domination}};
}

GameSpec game_spec_from_json(const Json& j) {
  GameSpec::Definition def;
  def.agents = int_field(j, "agents");
  const Json& coalitions = field(j, "coalitions");
  if (!coalitions.is_array()) throw ValidationError("'coalitions' must be an array");
  for (const Json& c : coalitions) {
    def.coalitions.push_back({int_field(c, "id"), ids_from_json(field(c, "members"), "members"),
                              rational_from_json(field(c, "weight"))});
  }
  if (j.contains("self_generating")) {
    def.self_generating = ids_from_json(j["self_generating"], "self_generating");
  }
  auto rules = [&](std::string_view name) {
    std::vector<Rule> out;
    if (!j.contains(std::string(name))) return out;
    const Json& list = j[std::string(name)];
    if (!list.is_array()) throw ValidationError("'" + std::string(name) + "' must be an array");
    for (const Json& r : list) {
      out.push_back({ids_from_json(field(r, "pre"), "pre"), int_field(r, "target")});
    }
    return out;
  };
  def.generation_rules = rules("generation_rules");
  def.domination_rules = rules("domination_rules");
  if (j.contains("include_weight_domination")) {
    const Json& flag = j["include_weight_domination"];
    if (!flag.is_boolean()) throw ValidationError("'include_weight_domination' must be boolean");
    def.include_weight_domination = flag.get<bool>();
  }
  return GameSpec(std::move(def));
}

Json to_json(const MatchingInstance& inst) {
  const MatchingInstance::Definition& def = inst.definition();
  Json edges = Json::array();
  for (const MatchingEdge& e : def.edges) {
    if (e.correlated()) {
      edges.push_back({{"u", e.u}, {"v", e.v}, {"b", rational_to_json(e.bu)}});
    } else {
      edges.push_back({{"u", e.u},
                       {"v", e.v},
                       {"bu", rational_to_json(e.bu)},
                       {"bv", rational_to_json(e.bv)}});
    }
  }
  Json links = Json::array();
  for (const auto& [a, b] : def.links) links.push_back({a, b});
  Json alphas = Json::array();
  for (const AlphaEntry& a : def.alphas) alphas.push_back({a.from, a.to, rational_to_json(a.value)});
  Json out = {{"vertices", def.vertices},
              {"edges", edges},
              {"links", links},
              {"alphas", alphas},
              {"variant", std::string(variant_name(def.variant))},
              {"k", def.k},
              {"lookahead", def.lookahead},
              {"considerate_mode", consider_name(def.considerate_mode)}};
  out["bipartition"] = def.bipartition ? Json(*def.bipartition) : Json(nullptr);
  return out;
}

MatchingInstance matching_instance_from_json(const Json& j) {
  MatchingInstance::Definition def;
  def.vertices = int_field(j, "vertices");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw ValidationError("'edges' must be an array");
  for (const Json& e : edges) {
    MatchingEdge edge{int_field(e, "u"), int_field(e, "v"), 0, 0};
    if (e.contains("b")) {
      edge.bu = edge.bv = rational_from_json(e["b"]);
    } else {
      edge.bu = rational_from_json(field(e, "bu"));
      edge.bv = rational_from_json(field(e, "bv"));
    }
    def.edges.push_back(std::move(edge));
  }
  if (j.contains("links")) {
    if (!j["links"].is_array()) throw ValidationError("'links' must be an array");
    for (const Json& l : j["links"]) {
      if (!l.is_array() || l.size() != 2) throw ValidationError("links are [u, v] pairs");
      def.links.emplace_back(as_int(l[0], "link endpoint"), as_int(l[1], "link endpoint"));
    }
  }
  if (j.contains("alphas")) {
    if (!j["alphas"].is_array()) throw ValidationError("'alphas' must be an array");
    for (const Json& a : j["alphas"]) {
      if (!a.is_array() || a.size() != 3) throw ValidationError("alphas are [u, v, value] triples");
      def.alphas.push_back({as_int(a[0], "alpha vertex"), as_int(a[1], "alpha vertex"),
                            rational_from_json(a[2])});
    }
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw ValidationError("'variant' must be a string");
    def.variant = parse_variant(j["variant"].get<std::string>());
  }
  if (j.contains("k")) def.k = int_field(j, "k");
  if (j.contains("lookahead")) def.lookahead = int_field(j, "lookahead");
  if (j.contains("considerate_mode")) {
    const Json& mode = j["considerate_mode"];
    if (mode == "symmetric") {
      def.considerate_mode = ConsiderateMode::kSymmetric;
    } else if (mode == "proposer") {
      def.considerate_mode = ConsiderateMode::kProposerOnly;
    } else {
      throw ValidationError("'considerate_mode' must be \"symmetric\" or \"proposer\"");
    }
  }
  if (j.contains("bipartition") && !j["bipartition"].is_null()) {
    def.bipartition = ids_from_json(j["bipartition"], "bipartition");
  }
  MatchingInstance inst(std::move(def));
  if (!j.contains("preferences")) return inst;

  const Json& prefs = j["preferences"];
  if (!prefs.is_object()) throw ValidationError("'preferences' must be an object");
  PreferenceTable table;
  for (const auto& [key, groups] : prefs.items()) {
    int vertex;
    try {
      std::size_t used = 0;
      vertex = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ValidationError("preference key '" + key + "' is not a vertex id");
    }
    if (!groups.is_array()) throw ValidationError("preferences are arrays of edge groups");
    std::vector<std::vector<EdgeId>> ranked;
    for (const Json& g : groups) ranked.push_back(ids_from_json(g, "preference group"));
    table.groups.emplace(vertex, std::move(ranked));
  }
  return with_preferences(inst, table);
}

Json to_json(const TraceStep& step) {
  Json rule = step.rule == kSelfGenerated ? Json("self") : Json(step.rule);
  return {{"inserted", step.inserted}, {"deleted", step.deleted}, {"rule", rule}};
}

TraceStep trace_step_from_json(const Json& j) {
  TraceStep step;
  step.inserted = int_field(j, "inserted");
  step.deleted = ids_from_json(field(j, "deleted"), "deleted");
  const Json& rule = field(j, "rule");
  if (rule == "self") {
    step.rule = kSelfGenerated;
  } else {
    step.rule = as_int(rule, "rule");
    if (step.rule < 0) throw ValidationError("rule must be \"self\" or a rule index");
  }
  return step;
}

Json to_json(const Move& move) { return {{"edge", move.edge}, {"dropped", move.dropped}}; }

Move move_from_json(const Json& j) {
  return {int_field(j, "edge"), ids_from_json(field(j, "dropped"), "dropped")};
}

std::string trace_to_jsonl(const ImprovementTrace& trace) {
  std::string out;
  for (const TraceStep& s : trace.steps) out += to_json(s).dump() + "\n";
  return out;
}

ImprovementTrace trace_from_jsonl(std::string_view text) {
  ImprovementTrace trace;
  each_line(text, [&](const Json& j) { trace.steps.push_back(trace_step_from_json(j)); });
  return trace;
}

std::string trace_to_jsonl(const MatchingTrace& trace) {
  std::string out;
  for (const Move& m : trace.steps) out += to_json(m).dump() + "\n";
  return out;
}

MatchingTrace matching_trace_from_jsonl(std::string_view text) {
  MatchingTrace trace;
  each_line(text, [&](const Json& j) { trace.steps.push_back(move_from_json(j)); });
  return trace;
}

Json to_json(const ConvergenceReport& report) {
  Json trace = Json::array();
  for (const TraceStep& s : report.trace.steps) trace.push_back(to_json(s));
  return {{"phase1_steps", report.phase1_steps},
          {"phase2_steps", report.phase2_steps},
          {"bound_phase1", report.bound_phase1},
          {"bound_phase2", report.bound_phase2},
          {"bound", report.bound()},
          {"trace", trace},
          {"final_state", ids_to_json(report.final_state.ids())}};
}

Json to_json(const TwoPhaseResult& result) {
  Json steps = Json::array();
  for (const Move& m : result.trace.steps) steps.push_back(to_json(m));
  return {{"phase1_steps", result.phase1_steps},
          {"phase2_steps", result.phase2_steps},
          {"bound", result.bound},
          {"trace", steps},
          {"final_matching", ids_to_json(result.final_matching.ids())}};
}

Json to_json(const TransitionGraph& graph) {
  Json states = Json::array();
  for (const StateKey& s : graph.states) states.push_back(s);
  Json edges = Json::array();
  for (const TransitionEdge& e : graph.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
  }
  return {{"states", states}, {"edges", edges}, {"overflow", graph.overflow},
          {"sinks", graph.sinks()}};
}

}  // namespace matchdyn
