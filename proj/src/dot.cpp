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

#include "matchdyn/dot.hpp"

#include <sstream>

namespace matchdyn {
namespace {

std::string join(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

std::string to_dot(const MovementGraph& g, const DotStyle& style, const MarkingState* marking) {
  std::ostringstream out;
  const GameSpec& spec = g.spec();
  const char* exchange_style = style.figure_style ? "dashed" : "solid";
  const char* domination_style = style.figure_style ? "bold" : "dashed";
  out << "digraph movement {\n  rankdir=LR;\n";
  for (CoalitionId v = 0; v < g.num_vertices(); ++v) {
    out << "  C" << v << " [label=\"C" << v << ':' << format_rational(spec.weight(v)) << '"';
    if (g.is_generator(v)) out << " shape=box";
    if (marking && marking->marked.contains(v)) out << " style=filled fillcolor=gray80";
    out << "];\n";
  }
  for (const ExchangeEdge& e : g.exchange_edges()) {
    out << "  C" << e.from << " -> C" << e.to << " [style=" << exchange_style << "];\n";
  }
  std::vector<Hyperedge> hyperedges = style.weight_domination ? g.all_hyperedges()
                                                              : g.stored_hyperedges();
  for (std::size_t h = 0; h < hyperedges.size(); ++h) {
    const Hyperedge& e = hyperedges[h];
    const char* color = e.rule < 0 ? "gray50" : "black";
    if (e.sources.size() == 1) {
      out << "  C" << e.sources.front() << " -> C" << e.target << " [style=" << domination_style
          << " color=" << color << " arrowhead=tee];\n";
      continue;
    }
    out << "  H" << h << " [shape=point label=\"\" xlabel=\"{" << join(e.sources) << "}\"];\n";
    for (CoalitionId s : e.sources) {
      out << "  C" << s << " -> H" << h << " [style=" << domination_style << " arrowhead=none];\n";
    }
    out << "  H" << h << " -> C" << e.target << " [style=" << domination_style
        << " color=" << color << " arrowhead=tee];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const TransitionGraph& graph) {
  std::ostringstream out;
  std::vector<std::size_t> degree = graph.out_degree();
  out << "digraph transitions {\n";
  for (std::size_t i = 0; i < graph.states.size(); ++i) {
    out << "  S" << i << " [label=\"{" << join(graph.states[i]) << "}\"";
    if (degree[i] == 0) out << " shape=doublecircle";
    if (i == 0) out << " style=bold";
    out << "];\n";
  }
  for (const TransitionEdge& e : graph.edges) {
    out << "  S" << e.from << " -> S" << e.to << " [label=\"" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace matchdyn
