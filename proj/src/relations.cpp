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


#include "ag/relations.hpp"

#include <vector>

namespace ag {

using NodeIndex = AnnotationGraph::NodeIndex;
using ArcIndex = AnnotationGraph::ArcIndex;

namespace {

// Reflexive s-precedence.
bool s_precedes_or_equal(const AnnotationGraph& g, NodeIndex a, NodeIndex b) {
  return a == b || g.reaches(a, b);
}

bool t_precedes_or_equal(const AnnotationGraph& g, NodeIndex a, NodeIndex b) {
  const TimeRef* ta = g.time(a);
  const TimeRef* tb = g.time(b);
  return ta && tb && *ta <= *tb;
}

}  // namespace

bool s_precedes(const AnnotationGraph& g, const NodeId& n1, const NodeId& n2) {
  return g.reaches(g.index_of(n1), g.index_of(n2));
}

bool t_precedes(const AnnotationGraph& g, const NodeId& n1, const NodeId& n2) {
  const TimeRef* t1 = g.time(g.index_of(n1));
  const TimeRef* t2 = g.time(g.index_of(n2));
  return t1 && t2 && *t1 < *t2;
}

bool precedes(const AnnotationGraph& g, const NodeId& n1, const NodeId& n2) {
  return precedes(g, g.index_of(n1), g.index_of(n2));
}

// A chain through the closure collapses to: a structural path, or a
// structural path to some anchored node, a strict time step, and a
// structural path from some anchored node. Times never decrease along
// chains, so only the earliest time after n1 and the latest before n2
// matter.
bool precedes(const AnnotationGraph& g, NodeIndex n1, NodeIndex n2) {
  if (g.reaches(n1, n2)) return true;
  const TimeRef* after = g.earliest_time_at_or_after(n1);
  const TimeRef* before = g.latest_time_at_or_before(n2);
  return after && before && *after < *before;
}

std::string_view to_string(InclusionMode mode) {
  switch (mode) {
    case InclusionMode::Structural:
      return "s";
    case InclusionMode::Temporal:
      return "t";
    case InclusionMode::Either:
      return "either";
    case InclusionMode::General:
      return "general";
  }
  return "general";
}

std::optional<InclusionMode> parse_inclusion_mode(std::string_view text) {
  if (text == "s" || text == "structural") return InclusionMode::Structural;
  if (text == "t" || text == "temporal") return InclusionMode::Temporal;
  if (text == "either") return InclusionMode::Either;
  if (text == "general") return InclusionMode::General;
  return std::nullopt;
}

bool s_includes(const AnnotationGraph& g, ArcIndex p, ArcIndex q) {
  return s_precedes_or_equal(g, g.source(p), g.source(q)) &&
         s_precedes_or_equal(g, g.target(q), g.target(p));
}

bool t_includes(const AnnotationGraph& g, ArcIndex p, ArcIndex q) {
  return t_precedes_or_equal(g, g.source(p), g.source(q)) &&
         t_precedes_or_equal(g, g.target(q), g.target(p));
}

bool includes(const AnnotationGraph& g, ArcIndex p, ArcIndex q,
              InclusionMode mode) {
  auto direct = [&](ArcIndex a, ArcIndex b) {
    return s_includes(g, a, b) || t_includes(g, a, b);
  };
  switch (mode) {
    case InclusionMode::Structural:
      return s_includes(g, p, q);
    case InclusionMode::Temporal:
      return t_includes(g, p, q);
    case InclusionMode::Either:
      return direct(p, q);
    case InclusionMode::General:
      break;
  }
  if (direct(p, q)) return true;
  std::vector<char> seen(g.arc_count(), 0);
  std::vector<ArcIndex> stack{p};
  seen[p] = 1;
  while (!stack.empty()) {
    ArcIndex cur = stack.back();
    stack.pop_back();
    for (ArcIndex r = 0; r < g.arc_count(); ++r) {
      if (seen[r] || !direct(cur, r)) continue;
      if (r == q) return true;
      seen[r] = 1;
      stack.push_back(r);
    }
  }
  return false;
}

bool s_includes(const AnnotationGraph& g, const Arc& p, const Arc& q) {
  return s_includes(g, g.index_of(p), g.index_of(q));
}

bool t_includes(const AnnotationGraph& g, const Arc& p, const Arc& q) {
  return t_includes(g, g.index_of(p), g.index_of(q));
}

bool includes(const AnnotationGraph& g, const Arc& p, const Arc& q) {
  return includes(g, p, q, InclusionMode::General);
}

bool includes(const AnnotationGraph& g, const Arc& p, const Arc& q,
              InclusionMode mode) {
  return includes(g, g.index_of(p), g.index_of(q), mode);
}

std::optional<TimeRef> glb(const AnnotationGraph& g, const Arc& a) {
  const TimeRef* t = g.latest_time_at_or_before(g.source(g.index_of(a)));
  if (!t) return std::nullopt;
  return *t;
}

std::optional<TimeRef> lub(const AnnotationGraph& g, const Arc& a) {
  const TimeRef* t = g.earliest_time_at_or_after(g.target(g.index_of(a)));
  if (!t) return std::nullopt;
  return *t;
}

}  // namespace ag
