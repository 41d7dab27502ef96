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

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ag/graph.hpp"
#include "ag/relations.hpp"
#include "ag/type_order.hpp"

namespace ag {

struct Interval {
  TimeRef lo;
  TimeRef hi;
};

// The span [lo, hi) an arc is indexed under: [glb, lub), with a missing
// bound replaced by the earliest (resp. latest) anchored time in the arc's
// connected component. Throws NotAnchored if some component carrying an
// arc has no anchored node.
std::vector<Interval> index_spans(const AnnotationGraph& g);

class TimeLocalIndex {
 public:
  using ArcIndex = AnnotationGraph::ArcIndex;

  static TimeLocalIndex build(const AnnotationGraph& g);

  const AnnotationGraph& graph() const { return graph_; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  // Arc indexes per interval, ordered by serialized line.
  const std::vector<std::vector<ArcIndex>>& postings() const {
    return postings_;
  }
  const Interval& span(ArcIndex a) const { return spans_[a]; }
  // Interval indexes [first, last) holding arc a.
  std::pair<std::size_t, std::size_t> intervals_of(ArcIndex a) const {
    return ranges_[a];
  }

  // The interval with lo <= t < hi, if any.
  std::optional<std::size_t> interval_containing(const TimeRef& t) const;

  // Arcs sharing an interval with a, excluding a. Throws UnknownArc.
  std::set<Arc> overlapping_arcs(const Arc& a) const;
  // Arcs other than a that a includes under `mode`, found among the arcs
  // sharing a's time range. Throws UnknownArc.
  std::set<Arc> included_arcs(const Arc& a,
                              InclusionMode mode = InclusionMode::Either) const;
  std::vector<ArcIndex> candidates_within(ArcIndex a) const;

  // Intervals flush left, one posting per line, later postings indented.
  std::string text(bool preserve_times = true) const;

 private:
  AnnotationGraph graph_;
  std::vector<Interval> intervals_;
  std::vector<std::vector<ArcIndex>> postings_;
  std::vector<Interval> spans_;
  std::vector<std::pair<std::size_t, std::size_t>> ranges_;
  // Arcs with lo == hi keyed by that time.
  std::multimap<TimeRef, ArcIndex> instants_;
  std::vector<std::string> lines_;
};

class TypeLocalIndex {
 public:
  using ArcIndex = AnnotationGraph::ArcIndex;

  static TypeLocalIndex build(const AnnotationGraph& g);

  const AnnotationGraph& graph() const { return graph_; }
  // Per type: content ascending, then glb ascending, lub descending, then
  // serialized line.
  const std::map<std::string, std::vector<ArcIndex>>& by_type() const {
    return by_type_;
  }
  std::span<const ArcIndex> arcs_of_type(const std::string& type) const;
  // Arcs of the type with exactly this content.
  std::span<const ArcIndex> arcs_with_label(const Label& label) const;

  // Position of each arc in the overall order (types ascending).
  const std::vector<std::size_t>& rank() const { return rank_; }

  std::string text(bool preserve_times = true) const;

 private:
  AnnotationGraph graph_;
  std::map<std::string, std::vector<ArcIndex>> by_type_;
  std::vector<std::size_t> rank_;
  std::vector<std::string> lines_;
};

class HierarchyIndex {
 public:
  using ArcIndex = AnnotationGraph::ArcIndex;

  struct Entry {
    ArcIndex arc;
    std::vector<ArcIndex> children;
  };

  static HierarchyIndex build(const AnnotationGraph& g, const TypeOrder& order,
                              InclusionMode mode = InclusionMode::Structural);

  const AnnotationGraph& graph() const { return graph_; }
  // One entry per maximal arc, in type-index order.
  const std::vector<Entry>& entries() const { return entries_; }
  // True iff type(p) > type(q) and p includes q.
  bool dominates(ArcIndex p, ArcIndex q) const;

  // Maximal arcs with identical children are listed together, followed by
  // the children indented eight spaces.
  std::string text(bool preserve_times = true) const;

 private:
  AnnotationGraph graph_;
  TypeOrder order_;
  InclusionMode mode_ = InclusionMode::Structural;
  std::vector<Entry> entries_;
  std::vector<Interval> spans_;
  std::vector<std::size_t> type_rank_;
};

}  // namespace ag
