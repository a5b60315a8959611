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

// JSON forms of games, matching instances, states and traces. Traces are
// written as JSON lines, one step per line.

#ifndef MATCHDYN_SERIALIZE_HPP_
#define MATCHDYN_SERIALIZE_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "matchdyn/bipartite.hpp"
#include "matchdyn/game.hpp"
#include "matchdyn/matching.hpp"
#include "matchdyn/oracle.hpp"
#include "matchdyn/sequencer.hpp"

namespace matchdyn {

using Json = nlohmann::json;

// Integers or "p/q" strings; numbers with a fractional part are rejected.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const GameSpec& spec);
// Throws ValidationError, naming the offending field.
GameSpec game_spec_from_json(const Json& j);

Json to_json(const MatchingInstance& inst);
// An optional "preferences" object {"vertex": [[edge ids], ...]} overrides
// the benefits of the listed vertices. Throws ValidationError.
MatchingInstance matching_instance_from_json(const Json& j);

Json ids_to_json(std::span<const int> ids);
std::vector<int> ids_from_json(const Json& j, std::string_view field);

// Documents carry optional "start" and "target" states next to the game or
// instance fields.
std::optional<std::vector<int>> optional_state(const Json& doc, std::string_view field);

Json to_json(const TraceStep& step);
TraceStep trace_step_from_json(const Json& j);
Json to_json(const Move& move);
Move move_from_json(const Json& j);

std::string trace_to_jsonl(const ImprovementTrace& trace);
ImprovementTrace trace_from_jsonl(std::string_view text);
std::string trace_to_jsonl(const MatchingTrace& trace);
MatchingTrace matching_trace_from_jsonl(std::string_view text);

Json to_json(const ConvergenceReport& report);
Json to_json(const TwoPhaseResult& result);
Json to_json(const TransitionGraph& graph);

// Parses text, rethrowing parse errors as ValidationError.
Json parse_json(std::string_view text);

}  // namespace matchdyn

#endif  // MATCHDYN_SERIALIZE_HPP_
