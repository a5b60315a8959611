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

// Graphviz renderings of movement graphs and explored transition systems.

#ifndef MATCHDYN_DOT_HPP_
#define MATCHDYN_DOT_HPP_

#include <string>

#include "matchdyn/movement_graph.hpp"
#include "matchdyn/oracle.hpp"

namespace matchdyn {

struct DotStyle {
  // Default: solid exchange edges and dashed domination hyperedges. The
  // figure style swaps this to thick domination edges and dashed exchange
  // edges.
  bool figure_style = false;
  // Weight-domination hyperedges are numerous; they are drawn only on request.
  bool weight_domination = false;
};

// Vertices are labelled "C<id>:<weight>"; generators are drawn as boxes and
// marked vertices filled.
std::string to_dot(const MovementGraph& g, const DotStyle& style = {},
                   const MarkingState* marking = nullptr);

// States are labelled by their ids; sinks are double circles.
std::string to_dot(const TransitionGraph& graph);

}  // namespace matchdyn

#endif  // MATCHDYN_DOT_HPP_
