// Copyright 2026 The agtk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Score-notation drawings of annotation graphs: one level per arc type,
// time running left to right, arcs as shaded rectangles.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ag/graph.hpp"

namespace ag {

enum class RenderFormat { Text, Svg };

struct RenderOptions {
  RenderFormat output = RenderFormat::Text;
  // Type -> level, top level 0. Types given the same level share it, with
  // extra rows where their arcs overlap. Unlisted types follow, one level
  // each, longer arcs higher. With no assignment at all the rows are also
  // reordered to avoid crossing connectors when possible.
  std::map<std::string, int> level_assignment;
  // Label types drawn as coindexing superscripts instead of rows.
  std::set<std::string> class_types;
  bool show_node_ids = false;
  bool timeline = true;
  // Columns per page for text (default 100), total pixels for SVG (default
  // at least 1000, wider when the narrowest arc needs it, at most 20000).
  int width = 0;
  // Text only: the score may not need more columns than this in total.
  int max_columns = 20000;
};

struct ScoreRow {
  std::string type;
  std::vector<AnnotationGraph::ArcIndex> arcs;  // left to right
};

struct ScoreLayout {
  std::vector<ScoreRow> rows;  // top to bottom
  // Horizontal position of each node in seconds. Anchored nodes sit at
  // their time; others are spread evenly between the anchors around them.
  std::vector<double> position;
  // Coindexing marks per arc, empty for most.
  std::vector<std::string> marks;
  double start = 0;
  double end = 0;
};

// Throws NotAnchored, InvalidValue for a negative level.
ScoreLayout layout_score(const AnnotationGraph& g, const RenderOptions& opts = {});

// Number of connectors that pass through a rectangle of a row between the
// two rows they join.
std::size_t count_crossings(const AnnotationGraph& g, const ScoreLayout& layout);

// Throws NotAnchored, LayoutOverflow.
std::string render_score(const AnnotationGraph& g, const RenderOptions& opts = {});

// Whether some ordering of the default rows has no crossing connector.
// Exhaustive up to 8 rows, local search beyond. Graphs with an unanchored
// component are laid out by path length instead of time. Arcs of
// `class_types` are left out, as the renderer draws them as coindexing.
bool check_rightward_planar(const AnnotationGraph& g,
                            const std::set<std::string>& class_types = {});

}  // namespace ag
