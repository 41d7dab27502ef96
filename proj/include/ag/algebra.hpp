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

#include "ag/graph.hpp"

namespace ag {

// Set algebra on arc sets.
//
// Anchors must agree on shared node ids: a node anchored in both inputs
// needs the same time (else AnchorConflict); a node anchored in only one
// input keeps that anchor. The union keeps every anchor of both inputs;
// intersection and relative complement keep anchors only for nodes that
// still carry an arc.
//
// unite() may create a cycle or a decreasing chain and then throws
// CycleError or OrderViolation. The other two produce subsets of a valid
// graph and cannot fail that way.
AnnotationGraph unite(const AnnotationGraph& a, const AnnotationGraph& b);
AnnotationGraph intersect(const AnnotationGraph& a, const AnnotationGraph& b);
AnnotationGraph relative_complement(const AnnotationGraph& a,
                                    const AnnotationGraph& b);

// The subgraph made of the given arcs of g, anchors restricted to their
// endpoints. Every arc must belong to g.
AnnotationGraph subgraph(const AnnotationGraph& g,
                         std::span<const AnnotationGraph::ArcIndex> arcs);

}  // namespace ag
