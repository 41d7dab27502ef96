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

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "ag/errors.hpp"
#include "ag/time_ref.hpp"
#include "ag/types.hpp"

namespace ag {

enum class AnchorClass { General = 0, Anchored = 1, TotallyAnchored = 2 };

std::string_view to_string(AnchorClass c);

// Unvalidated material for a graph: what build() checks, and what
// validate_structure() reports on.
struct GraphParts {
  std::set<Arc> arcs;
  std::map<NodeId, TimeRef> anchors;
};

// An annotation graph: a set of labeled arcs over identified nodes plus a
// partial map from nodes to times.
//
// Construction enforces two invariants: the arcs form a directed acyclic
// graph, and times never decrease along any chain of arcs (arcs between
// nodes with equal times are allowed and model instants). A constructed
// graph is immutable; copies share storage, and every const member is
// safe to call from several threads.
//
// Nodes and arcs have dense indexes (their positions in nodes() and
// arcs(), both sorted) which the relation and index code use internally.
class AnnotationGraph {
 public:
  using NodeIndex = std::size_t;
  using ArcIndex = std::size_t;

  AnnotationGraph();

  // Throws CycleError or OrderViolation.
  static AnnotationGraph build(GraphParts parts);
  static AnnotationGraph build(std::set<Arc> arcs,
                               std::map<NodeId, TimeRef> anchors = {});

  bool empty() const { return arcs().empty() && anchors().empty(); }
  std::span<const Arc> arcs() const;
  std::span<const NodeId> nodes() const;
  const std::map<NodeId, TimeRef>& anchors() const;
  std::size_t arc_count() const { return arcs().size(); }
  std::size_t node_count() const { return nodes().size(); }

  std::optional<NodeIndex> find(const NodeId& id) const;
  std::optional<ArcIndex> find(const Arc& arc) const;
  // Throw UnknownNode / UnknownArc.
  NodeIndex index_of(const NodeId& id) const;
  ArcIndex index_of(const Arc& arc) const;

  bool contains(const NodeId& id) const { return find(id).has_value(); }
  bool contains(const Arc& arc) const { return find(arc).has_value(); }

  const TimeRef* time(const NodeId& id) const;
  const TimeRef* time(NodeIndex n) const;

  NodeIndex source(ArcIndex a) const;
  NodeIndex target(ArcIndex a) const;
  std::span<const ArcIndex> outgoing(NodeIndex n) const;
  std::span<const ArcIndex> incoming(NodeIndex n) const;
  // Deterministic topological order of all nodes.
  std::span<const NodeIndex> topological_order() const;

  // Greatest time among n and the nodes with a chain to n; nullptr if
  // none of them is anchored.
  const TimeRef* latest_time_at_or_before(NodeIndex n) const;
  // Least time among n and the nodes reachable from n.
  const TimeRef* earliest_time_at_or_after(NodeIndex n) const;

  // True iff a chain of one or more arcs leads from `from` to `to`.
  bool reaches(NodeIndex from, NodeIndex to) const;

  GraphParts parts() const;

  friend bool operator==(const AnnotationGraph& a, const AnnotationGraph& b);

 private:
  struct Impl;
  explicit AnnotationGraph(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

AnchorClass classify_anchoring(const AnnotationGraph& g);

// Number of weakly connected components (isolated anchored nodes count).
std::size_t component_count(const AnnotationGraph& g);

// Component number per node index, numbered by first node in index order.
std::vector<std::size_t> component_ids(const AnnotationGraph& g);

}  // namespace ag
