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

#include "ag/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <queue>
#include <utility>

namespace ag {

namespace {
constexpr std::ptrdiff_t kNone = -1;
}  // namespace

struct AnnotationGraph::Impl {
  std::vector<Arc> arcs;
  std::map<NodeId, TimeRef> anchors;
  std::vector<NodeId> nodes;
  std::vector<const TimeRef*> node_time;
  std::vector<NodeIndex> arc_src;
  std::vector<NodeIndex> arc_dst;
  std::vector<std::vector<ArcIndex>> out;
  std::vector<std::vector<ArcIndex>> in;
  std::vector<NodeIndex> topo;
  // Node whose time is the bound, or kNone.
  std::vector<std::ptrdiff_t> latest_before;
  std::vector<std::ptrdiff_t> earliest_after;

  // Strict descendants per node, one bit per node index. Built on first
  // use since it is quadratic in size.
  mutable std::once_flag reach_once;
  mutable std::vector<std::vector<std::uint64_t>> reach;

  void compute_reach() const;
};

void AnnotationGraph::Impl::compute_reach() const {
  std::size_t words = (nodes.size() + 63) / 64;
  reach.assign(nodes.size(), std::vector<std::uint64_t>(words, 0));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto& mine = reach[*it];
    for (ArcIndex a : out[*it]) {
      NodeIndex d = arc_dst[a];
      mine[d / 64] |= std::uint64_t{1} << (d % 64);
      const auto& theirs = reach[d];
      for (std::size_t w = 0; w < words; ++w) mine[w] |= theirs[w];
    }
  }
}

namespace {

std::string node_token(const NodeId& id, const TimeRef* t) {
  return "<" + id.str() + "/" + (t ? t->str() : std::string()) + ">";
}

std::string arc_token(const Arc& a, const TimeRef* ts, const TimeRef* td) {
  return node_token(a.src, ts) + " " + a.label.str() + " " +
         node_token(a.dst, td);
}

// Called when Kahn's algorithm leaves nodes unprocessed: walks back along
// incoming arcs inside the leftover set until a node repeats.
std::vector<std::string> find_cycle(
    const std::vector<NodeId>& nodes, const std::vector<std::size_t>& indegree,
    const std::vector<std::vector<std::size_t>>& in,
    const std::vector<std::size_t>& arc_src) {
  std::size_t start = 0;
  while (indegree[start] == 0) ++start;
  std::vector<std::size_t> path;
  std::vector<std::ptrdiff_t> pos(nodes.size(), kNone);
  std::size_t cur = start;
  while (pos[cur] == kNone) {
    pos[cur] = static_cast<std::ptrdiff_t>(path.size());
    path.push_back(cur);
    for (std::size_t a : in[cur]) {
      if (indegree[arc_src[a]] != 0) {
        cur = arc_src[a];
        break;
      }
    }
  }
  std::vector<std::string> cycle;
  for (auto i = static_cast<std::size_t>(pos[cur]); i < path.size(); ++i) {
    cycle.push_back(nodes[path[i]].str());
  }
  std::reverse(cycle.begin(), cycle.end());
  cycle.push_back(cycle.front());
  return cycle;
}

}  // namespace

AnnotationGraph::AnnotationGraph() : AnnotationGraph(build(GraphParts{})) {}

AnnotationGraph::AnnotationGraph(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

AnnotationGraph AnnotationGraph::build(std::set<Arc> arcs,
                                       std::map<NodeId, TimeRef> anchors) {
  return build(GraphParts{std::move(arcs), std::move(anchors)});
}

AnnotationGraph AnnotationGraph::build(GraphParts parts) {
  auto impl = std::make_shared<Impl>();
  impl->arcs.assign(parts.arcs.begin(), parts.arcs.end());
  impl->anchors = std::move(parts.anchors);

  std::set<NodeId> node_set;
  for (const auto& a : impl->arcs) {
    node_set.insert(a.src);
    node_set.insert(a.dst);
  }
  for (const auto& [id, t] : impl->anchors) node_set.insert(id);
  impl->nodes.assign(node_set.begin(), node_set.end());

  const std::size_t n = impl->nodes.size();
  auto index = [&](const NodeId& id) {
    return static_cast<NodeIndex>(
        std::lower_bound(impl->nodes.begin(), impl->nodes.end(), id) -
        impl->nodes.begin());
  };
  impl->node_time.assign(n, nullptr);
  for (const auto& [id, t] : impl->anchors) impl->node_time[index(id)] = &t;

  impl->out.assign(n, {});
  impl->in.assign(n, {});
  impl->arc_src.reserve(impl->arcs.size());
  impl->arc_dst.reserve(impl->arcs.size());
  for (ArcIndex a = 0; a < impl->arcs.size(); ++a) {
    NodeIndex s = index(impl->arcs[a].src);
    NodeIndex d = index(impl->arcs[a].dst);
    impl->arc_src.push_back(s);
    impl->arc_dst.push_back(d);
    impl->out[s].push_back(a);
    impl->in[d].push_back(a);
  }

  // Kahn's algorithm, smallest index first for a deterministic order.
  std::vector<std::size_t> indegree(n);
  for (NodeIndex v = 0; v < n; ++v) indegree[v] = impl->in[v].size();
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  impl->topo.reserve(n);
  while (!ready.empty()) {
    NodeIndex v = ready.top();
    ready.pop();
    impl->topo.push_back(v);
    for (ArcIndex a : impl->out[v]) {
      if (--indegree[impl->arc_dst[a]] == 0) ready.push(impl->arc_dst[a]);
    }
  }
  if (impl->topo.size() != n) {
    throw CycleError(
        find_cycle(impl->nodes, indegree, impl->in, impl->arc_src));
  }

  // Propagate bounds along the topological order. Checking each anchored
  // node against the latest time before it enforces order preservation
  // along whole chains, not just across single arcs.
  const auto& time = impl->node_time;
  impl->latest_before.assign(n, kNone);
  for (NodeIndex v : impl->topo) {
    std::ptrdiff_t best = kNone;
    ArcIndex via = 0;
    for (ArcIndex a : impl->in[v]) {
      std::ptrdiff_t cand = impl->latest_before[impl->arc_src[a]];
      if (cand != kNone && (best == kNone || *time[best] < *time[cand])) {
        best = cand;
        via = a;
      }
    }
    if (time[v]) {
      if (best != kNone && *time[v] < *time[best]) {
        const Arc& arc = impl->arcs[via];
        throw OrderViolation(
            arc_token(arc, time[impl->arc_src[via]], time[v]),
            "node " + impl->nodes[best].str() + " at " + time[best]->str() +
                " precedes node " + impl->nodes[v].str() + " at " +
                time[v]->str());
      }
      best = static_cast<std::ptrdiff_t>(v);
    }
    impl->latest_before[v] = best;
  }
  impl->earliest_after.assign(n, kNone);
  for (auto it = impl->topo.rbegin(); it != impl->topo.rend(); ++it) {
    NodeIndex v = *it;
    if (time[v]) {
      impl->earliest_after[v] = static_cast<std::ptrdiff_t>(v);
      continue;
    }
    std::ptrdiff_t best = kNone;
    for (ArcIndex a : impl->out[v]) {
      std::ptrdiff_t cand = impl->earliest_after[impl->arc_dst[a]];
      if (cand != kNone && (best == kNone || *time[cand] < *time[best])) {
        best = cand;
      }
    }
    impl->earliest_after[v] = best;
  }

  return AnnotationGraph(std::move(impl));
}

std::span<const Arc> AnnotationGraph::arcs() const { return impl_->arcs; }
std::span<const NodeId> AnnotationGraph::nodes() const { return impl_->nodes; }
const std::map<NodeId, TimeRef>& AnnotationGraph::anchors() const {
  return impl_->anchors;
}

std::optional<AnnotationGraph::NodeIndex> AnnotationGraph::find(
    const NodeId& id) const {
  auto it = std::lower_bound(impl_->nodes.begin(), impl_->nodes.end(), id);
  if (it == impl_->nodes.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - impl_->nodes.begin());
}

std::optional<AnnotationGraph::ArcIndex> AnnotationGraph::find(
    const Arc& arc) const {
  auto it = std::lower_bound(impl_->arcs.begin(), impl_->arcs.end(), arc);
  if (it == impl_->arcs.end() || *it != arc) return std::nullopt;
  return static_cast<ArcIndex>(it - impl_->arcs.begin());
}

AnnotationGraph::NodeIndex AnnotationGraph::index_of(const NodeId& id) const {
  auto n = find(id);
  if (!n) throw UnknownNode(id.str());
  return *n;
}

AnnotationGraph::ArcIndex AnnotationGraph::index_of(const Arc& arc) const {
  auto a = find(arc);
  if (!a) throw UnknownArc(describe(arc));
  return *a;
}

const TimeRef* AnnotationGraph::time(const NodeId& id) const {
  auto it = impl_->anchors.find(id);
  return it == impl_->anchors.end() ? nullptr : &it->second;
}

const TimeRef* AnnotationGraph::time(NodeIndex n) const {
  return impl_->node_time[n];
}

AnnotationGraph::NodeIndex AnnotationGraph::source(ArcIndex a) const {
  return impl_->arc_src[a];
}
AnnotationGraph::NodeIndex AnnotationGraph::target(ArcIndex a) const {
  return impl_->arc_dst[a];
}
std::span<const AnnotationGraph::ArcIndex> AnnotationGraph::outgoing(
    NodeIndex n) const {
  return impl_->out[n];
}
std::span<const AnnotationGraph::ArcIndex> AnnotationGraph::incoming(
    NodeIndex n) const {
  return impl_->in[n];
}
std::span<const AnnotationGraph::NodeIndex>
AnnotationGraph::topological_order() const {
  return impl_->topo;
}

const TimeRef* AnnotationGraph::latest_time_at_or_before(NodeIndex n) const {
  auto b = impl_->latest_before[n];
  return b == kNone ? nullptr : impl_->node_time[b];
}

const TimeRef* AnnotationGraph::earliest_time_at_or_after(NodeIndex n) const {
  auto b = impl_->earliest_after[n];
  return b == kNone ? nullptr : impl_->node_time[b];
}

bool AnnotationGraph::reaches(NodeIndex from, NodeIndex to) const {
  std::call_once(impl_->reach_once, [this] { impl_->compute_reach(); });
  return (impl_->reach[from][to / 64] >> (to % 64)) & 1U;
}

GraphParts AnnotationGraph::parts() const {
  return GraphParts{std::set<Arc>(impl_->arcs.begin(), impl_->arcs.end()),
                    impl_->anchors};
}

bool operator==(const AnnotationGraph& a, const AnnotationGraph& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->arcs == b.impl_->arcs && a.impl_->anchors == b.impl_->anchors;
}

std::string_view to_string(AnchorClass c) {
  switch (c) {
    case AnchorClass::General:
      return "general";
    case AnchorClass::Anchored:
      return "anchored";
    case AnchorClass::TotallyAnchored:
      return "totally-anchored";
  }
  return "general";
}

AnchorClass classify_anchoring(const AnnotationGraph& g) {
  bool total = true;
  for (AnnotationGraph::NodeIndex n = 0; n < g.node_count(); ++n) {
    if (g.time(n)) continue;
    total = false;
    if (g.outgoing(n).empty() || g.incoming(n).empty()) {
      return AnchorClass::General;
    }
  }
  return total ? AnchorClass::TotallyAnchored : AnchorClass::Anchored;
}

std::vector<std::size_t> component_ids(const AnnotationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (AnnotationGraph::ArcIndex a = 0; a < g.arc_count(); ++a) {
    auto r1 = root(g.source(a));
    auto r2 = root(g.target(a));
    if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
  }
  std::vector<std::size_t> ids(n);
  std::map<std::size_t, std::size_t> numbering;
  for (std::size_t v = 0; v < n; ++v) {
    auto r = root(v);
    auto [it, inserted] = numbering.emplace(r, numbering.size());
    ids[v] = it->second;
  }
  return ids;
}

std::size_t component_count(const AnnotationGraph& g) {
  auto ids = component_ids(g);
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

}  // namespace ag
