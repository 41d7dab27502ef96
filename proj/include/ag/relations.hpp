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

#include <optional>
#include <string_view>

#include "ag/graph.hpp"

namespace ag {

// Node precedence.
//
// s_precedes: a chain of one or more arcs leads from n1 to n2.
// t_precedes: both nodes are anchored and tau(n1) < tau(n2).
// precedes:   the transitive closure of the union of the two.
//
// All three are strict. Unknown node ids throw UnknownNode.
bool s_precedes(const AnnotationGraph& g, const NodeId& n1, const NodeId& n2);
bool t_precedes(const AnnotationGraph& g, const NodeId& n1, const NodeId& n2);
bool precedes(const AnnotationGraph& g, const NodeId& n1, const NodeId& n2);

bool precedes(const AnnotationGraph& g, AnnotationGraph::NodeIndex n1,
              AnnotationGraph::NodeIndex n2);

// Which arc-inclusion relation to use. `Either` is s- or t-inclusion
// without closing over the union; `General` is the closure.
enum class InclusionMode { Structural, Temporal, Either, General };

std::string_view to_string(InclusionMode mode);
std::optional<InclusionMode> parse_inclusion_mode(std::string_view text);

// Arc inclusion, p includes q. Non-strict, so every arc includes itself
// under s-inclusion. Arcs not in g throw UnknownArc.
//
// s_includes: p.src is q.src or s-precedes it, and q.dst is p.dst or
//             s-precedes it.
// t_includes: all four endpoints are anchored, tau(p.src) <= tau(q.src)
//             and tau(q.dst) <= tau(p.dst).
// includes:   transitive closure of the union over the arc set.
bool s_includes(const AnnotationGraph& g, const Arc& p, const Arc& q);
bool t_includes(const AnnotationGraph& g, const Arc& p, const Arc& q);
bool includes(const AnnotationGraph& g, const Arc& p, const Arc& q);
bool includes(const AnnotationGraph& g, const Arc& p, const Arc& q,
              InclusionMode mode);

bool s_includes(const AnnotationGraph& g, AnnotationGraph::ArcIndex p,
                AnnotationGraph::ArcIndex q);
bool t_includes(const AnnotationGraph& g, AnnotationGraph::ArcIndex p,
                AnnotationGraph::ArcIndex q);
bool includes(const AnnotationGraph& g, AnnotationGraph::ArcIndex p,
              AnnotationGraph::ArcIndex q, InclusionMode mode);

// Greatest time of an anchored node at or before the arc's source, and
// least time of an anchored node at or after its target. Absent when no
// such node exists.
std::optional<TimeRef> glb(const AnnotationGraph& g, const Arc& a);
std::optional<TimeRef> lub(const AnnotationGraph& g, const Arc& a);

}  // namespace ag
