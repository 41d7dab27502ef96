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


#pragma once

#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ag/graph.hpp"

namespace ag {

// One line of the tuple format: `<id/time?> type/content <id/time?>`.
struct TupleLine {
  NodeId src_id;
  std::optional<TimeRef> src_time;
  Label label;
  NodeId dst_id;
  std::optional<TimeRef> dst_time;

  friend auto operator<=>(const TupleLine&, const TupleLine&) = default;
  friend bool operator==(const TupleLine&, const TupleLine&) = default;
};

struct SerializeOptions {
  // Keep the spelling a time was read with ("2391.60"); otherwise write
  // the shortest decimal ("2391.6").
  bool preserve_times = true;
  // Written first, one `# ` line each.
  std::vector<std::string> comments;
};

// Percent-encodes space, tab, CR, LF, '<', '>' and '%'.
std::string escape_content(std::string_view content);
// Throws InvalidValue on a malformed escape.
std::string unescape_content(std::string_view content);

std::string format_line(const TupleLine& line, bool preserve_times = true);
// `lineno` is used for error positions only.
TupleLine parse_line(std::string_view line, std::size_t lineno = 0);

std::vector<TupleLine> lines_of(const AnnotationGraph& g);
std::string format_arc(const AnnotationGraph& g, const Arc& arc,
                       bool preserve_times = true);

// One line per arc, sorted by the line text, each newline-terminated.
// Anchors on nodes that touch no arc cannot be written and are dropped.
std::string serialize(const AnnotationGraph& g,
                      const SerializeOptions& opts = {});

// Blank lines and lines starting with '#' are skipped.
std::vector<TupleLine> parse_lines(std::string_view text);
// Throws AnchorConflict, CycleError, OrderViolation.
AnnotationGraph graph_from_lines(std::span<const TupleLine> lines);
AnnotationGraph parse(std::string_view text);

AnnotationGraph merge(std::span<const std::string> texts);

struct ArcDelta {
  std::set<TupleLine> added;
  std::set<TupleLine> removed;
};

ArcDelta delta(const AnnotationGraph& old_graph,
               const AnnotationGraph& new_graph);
AnnotationGraph apply(const ArcDelta& d, const AnnotationGraph& g);
// `- line` for removals, then `+ line` for additions.
std::string format_delta(const ArcDelta& d, bool preserve_times = true);
ArcDelta parse_delta(std::string_view text);

}  // namespace ag
