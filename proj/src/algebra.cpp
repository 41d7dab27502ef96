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


#include "ag/algebra.hpp"

#include <algorithm>
#include <iterator>

namespace ag {
namespace {

// Merges anchor maps, raising AnchorConflict on two different times for one
// node. A node timed on one side and untimed on the other keeps its time.
std::map<NodeId, TimeRef> merge_anchors(const std::map<NodeId, TimeRef>& a,
                                        const std::map<NodeId, TimeRef>& b) {
  std::map<NodeId, TimeRef> out = a;
  for (const auto& [id, t] : b) {
    auto [it, inserted] = out.emplace(id, t);
    if (!inserted && it->second != t) {
      throw AnchorConflict(id.str(), it->second.str(), t.str());
    }
  }
  return out;
}

std::map<NodeId, TimeRef> restrict_to(const std::map<NodeId, TimeRef>& anchors,
                                      const std::set<Arc>& arcs) {
  std::map<NodeId, TimeRef> out;
  for (const auto& a : arcs) {
    for (const NodeId* id : {&a.src, &a.dst}) {
      if (auto it = anchors.find(*id); it != anchors.end()) out.insert(*it);
    }
  }
  return out;
}

}  // namespace

AnnotationGraph unite(const AnnotationGraph& a, const AnnotationGraph& b) {
  GraphParts parts;
  parts.anchors = merge_anchors(a.anchors(), b.anchors());
  parts.arcs.insert(a.arcs().begin(), a.arcs().end());
  parts.arcs.insert(b.arcs().begin(), b.arcs().end());
  return AnnotationGraph::build(std::move(parts));
}

AnnotationGraph intersect(const AnnotationGraph& a, const AnnotationGraph& b) {
  auto anchors = merge_anchors(a.anchors(), b.anchors());
  GraphParts parts;
  std::set_intersection(a.arcs().begin(), a.arcs().end(), b.arcs().begin(),
                        b.arcs().end(),
                        std::inserter(parts.arcs, parts.arcs.end()));
  parts.anchors = restrict_to(anchors, parts.arcs);
  return AnnotationGraph::build(std::move(parts));
}

AnnotationGraph relative_complement(const AnnotationGraph& a,
                                    const AnnotationGraph& b) {
  merge_anchors(a.anchors(), b.anchors());
  GraphParts parts;
  std::set_difference(a.arcs().begin(), a.arcs().end(), b.arcs().begin(),
                      b.arcs().end(),
                      std::inserter(parts.arcs, parts.arcs.end()));
  parts.anchors = restrict_to(a.anchors(), parts.arcs);
  return AnnotationGraph::build(std::move(parts));
}

AnnotationGraph subgraph(const AnnotationGraph& g,
                         std::span<const AnnotationGraph::ArcIndex> arcs) {
  GraphParts parts;
  for (auto i : arcs) parts.arcs.insert(g.arcs()[i]);
  parts.anchors = restrict_to(g.anchors(), parts.arcs);
  return AnnotationGraph::build(std::move(parts));
}

}  // namespace ag
