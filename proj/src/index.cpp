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


#include "ag/index.hpp"

#include <algorithm>
#include <tuple>

#include "ag/encoding.hpp"

namespace ag {
namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::vector<std::size_t> topo_rank(const AnnotationGraph& g) {
  std::vector<std::size_t> rank(g.node_count());
  auto order = g.topological_order();
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return rank;
}

}  // namespace

std::vector<Interval> index_spans(const AnnotationGraph& g) {
  auto comp = component_ids(g);
  std::size_t ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<const TimeRef*> earliest(ncomp, nullptr);
  std::vector<const TimeRef*> latest(ncomp, nullptr);
  for (AnnotationGraph::NodeIndex n = 0; n < g.node_count(); ++n) {
    const TimeRef* t = g.time(n);
    if (!t) continue;
    auto c = comp[n];
    if (!earliest[c] || *t < *earliest[c]) earliest[c] = t;
    if (!latest[c] || *latest[c] < *t) latest[c] = t;
  }
  std::vector<Interval> spans;
  spans.reserve(g.arc_count());
  for (AnnotationGraph::ArcIndex a = 0; a < g.arc_count(); ++a) {
    auto c = comp[g.source(a)];
    const TimeRef* lo = g.latest_time_at_or_before(g.source(a));
    const TimeRef* hi = g.earliest_time_at_or_after(g.target(a));
    if (!lo) lo = earliest[c];
    if (!hi) hi = latest[c];
    if (!lo || !hi) {
      throw NotAnchored("no anchored node is connected to arc " +
                        describe(g.arcs()[a]));
    }
    spans.push_back(Interval{*lo, *hi});
  }
  return spans;
}

TimeLocalIndex TimeLocalIndex::build(const AnnotationGraph& g) {
  TimeLocalIndex idx;
  idx.graph_ = g;
  idx.spans_ = index_spans(g);

  // Distinct times, each spelled as first met in node order.
  std::vector<TimeRef> times;
  {
    std::map<TimeRef, TimeRef> distinct;
    for (const auto& [id, t] : g.anchors()) distinct.emplace(t, t);
    for (const auto& [v, t] : distinct) times.push_back(t);
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    idx.intervals_.push_back(Interval{times[i], times[i + 1]});
  }
  auto position = [&](const TimeRef& t) {
    return static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), t) - times.begin());
  };

  idx.lines_.reserve(g.arc_count());
  for (const auto& a : g.arcs()) idx.lines_.push_back(format_arc(g, a));

  idx.postings_.assign(idx.intervals_.size(), {});
  idx.ranges_.reserve(g.arc_count());
  for (ArcIndex a = 0; a < g.arc_count(); ++a) {
    const auto& s = idx.spans_[a];
    std::size_t first = position(s.lo);
    std::size_t last = position(s.hi);
    if (first == last) {
      idx.instants_.emplace(s.lo, a);
      if (first < idx.intervals_.size()) last = first + 1;
    }
    idx.ranges_.emplace_back(first, last);
    for (std::size_t i = first; i < last; ++i) idx.postings_[i].push_back(a);
  }
  for (auto& p : idx.postings_) {
    std::sort(p.begin(), p.end(), [&](ArcIndex x, ArcIndex y) {
      return idx.lines_[x] < idx.lines_[y];
    });
  }
  return idx;
}

std::optional<std::size_t> TimeLocalIndex::interval_containing(
    const TimeRef& t) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), t,
      [](const TimeRef& v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (!(t < it->hi)) return std::nullopt;
  return static_cast<std::size_t>(it - intervals_.begin());
}

std::set<Arc> TimeLocalIndex::overlapping_arcs(const Arc& a) const {
  ArcIndex self = graph_.index_of(a);
  std::set<Arc> out;
  auto [first, last] = ranges_[self];
  for (std::size_t i = first; i < last; ++i) {
    for (ArcIndex b : postings_[i]) {
      if (b != self) out.insert(graph_.arcs()[b]);
    }
  }
  return out;
}

std::vector<TimeLocalIndex::ArcIndex> TimeLocalIndex::candidates_within(
    ArcIndex self) const {
  std::vector<ArcIndex> out;
  auto [first, last] = ranges_[self];
  for (std::size_t i = first; i < last; ++i) {
    out.insert(out.end(), postings_[i].begin(), postings_[i].end());
  }
  // Instants at the upper end belong to no interval of this arc.
  const auto& s = spans_[self];
  for (auto it = instants_.lower_bound(s.lo);
       it != instants_.end() && it->first <= s.hi; ++it) {
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase(out, self);
  return out;
}

std::set<Arc> TimeLocalIndex::included_arcs(const Arc& a,
                                            InclusionMode mode) const {
  ArcIndex self = graph_.index_of(a);
  std::set<Arc> out;
  for (ArcIndex b : candidates_within(self)) {
    if (includes(graph_, self, b, mode)) out.insert(graph_.arcs()[b]);
  }
  return out;
}

std::string TimeLocalIndex::text(bool preserve_times) const {
  std::size_t w = 0;
  for (const auto& iv : intervals_) {
    w = std::max({w, iv.lo.str(preserve_times).size(),
                  iv.hi.str(preserve_times).size()});
  }
  std::string indent(2 * w + 4, ' ');
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    std::string head = pad(intervals_[i].lo.str(preserve_times), w) + "  " +
                       intervals_[i].hi.str(preserve_times);
    if (postings_[i].empty()) {
      out += head + "\n";
      continue;
    }
    head = pad(head, 2 * w + 2) + "  ";
    bool first = true;
    for (ArcIndex a : postings_[i]) {
      out += (first ? head : indent) +
             format_arc(graph_, graph_.arcs()[a], preserve_times) + "\n";
      first = false;
    }
  }
  return out;
}

TypeLocalIndex TypeLocalIndex::build(const AnnotationGraph& g) {
  TypeLocalIndex idx;
  idx.graph_ = g;
  auto spans = index_spans(g);
  idx.lines_.reserve(g.arc_count());
  for (const auto& a : g.arcs()) idx.lines_.push_back(format_arc(g, a));
  for (ArcIndex a = 0; a < g.arc_count(); ++a) {
    idx.by_type_[g.arcs()[a].label.type()].push_back(a);
  }
  // Arcs are stored sorted by (src, label, dst), so only the content,
  // span and line keys need sorting within a type.
  for (auto& [type, list] : idx.by_type_) {
    std::sort(list.begin(), list.end(), [&](ArcIndex x, ArcIndex y) {
      const auto& cx = g.arcs()[x].label.content();
      const auto& cy = g.arcs()[y].label.content();
      if (cx != cy) return cx < cy;
      if (spans[x].lo != spans[y].lo) return spans[x].lo < spans[y].lo;
      if (spans[x].hi != spans[y].hi) return spans[y].hi < spans[x].hi;
      return idx.lines_[x] < idx.lines_[y];
    });
  }
  idx.rank_.assign(g.arc_count(), 0);
  std::size_t r = 0;
  for (const auto& [type, list] : idx.by_type_) {
    for (ArcIndex a : list) idx.rank_[a] = r++;
  }
  return idx;
}

std::span<const TypeLocalIndex::ArcIndex> TypeLocalIndex::arcs_of_type(
    const std::string& type) const {
  auto it = by_type_.find(type);
  if (it == by_type_.end()) return {};
  return it->second;
}

std::span<const TypeLocalIndex::ArcIndex> TypeLocalIndex::arcs_with_label(
    const Label& label) const {
  auto list = arcs_of_type(label.type());
  auto lo = std::partition_point(list.begin(), list.end(), [&](ArcIndex a) {
    return graph_.arcs()[a].label.content() < label.content();
  });
  auto hi = std::partition_point(lo, list.end(), [&](ArcIndex a) {
    return graph_.arcs()[a].label.content() == label.content();
  });
  return list.subspan(static_cast<std::size_t>(lo - list.begin()),
                      static_cast<std::size_t>(hi - lo));
}

std::string TypeLocalIndex::text(bool preserve_times) const {
  std::size_t tw = 0;
  std::size_t cw = 0;
  for (const auto& [type, list] : by_type_) {
    tw = std::max(tw, type.size());
    for (ArcIndex a : list) {
      cw = std::max(cw, escape_content(graph_.arcs()[a].label.content()).size());
    }
  }
  std::string out;
  for (const auto& [type, list] : by_type_) {
    bool first = true;
    for (ArcIndex a : list) {
      const Arc& arc = graph_.arcs()[a];
      out += pad(first ? type : std::string(), tw + 1) +
             pad(escape_content(arc.label.content()), cw + 2) +
             format_arc(graph_, arc, preserve_times) + "\n";
      first = false;
    }
  }
  return out;
}

bool HierarchyIndex::dominates(ArcIndex p, ArcIndex q) const {
  if (p == q) return false;
  const auto& tp = graph_.arcs()[p].label.type();
  const auto& tq = graph_.arcs()[q].label.type();
  return order_.higher(tp, tq) && includes(graph_, p, q, mode_);
}

HierarchyIndex HierarchyIndex::build(const AnnotationGraph& g,
                                     const TypeOrder& order,
                                     InclusionMode mode) {
  HierarchyIndex idx;
  idx.graph_ = g;
  idx.order_ = order;
  idx.mode_ = mode;
  idx.spans_ = index_spans(g);
  auto types = TypeLocalIndex::build(g);
  idx.type_rank_ = types.rank();

  const std::size_t n = g.arc_count();
  // Only pairs of ordered types can dominate; group arcs by type first.
  std::map<std::string, std::vector<ArcIndex>> of_type;
  for (ArcIndex a = 0; a < n; ++a) of_type[g.arcs()[a].label.type()].push_back(a);
  std::vector<std::vector<ArcIndex>> dominated(n);
  std::vector<char> has_parent(n, 0);
  for (const auto& [hi, ps] : of_type) {
    for (const auto& [lo, qs] : of_type) {
      if (!order.higher(hi, lo)) continue;
      for (ArcIndex p : ps) {
        for (ArcIndex q : qs) {
          if (includes(g, p, q, mode)) {
            dominated[p].push_back(q);
            has_parent[q] = 1;
          }
        }
      }
    }
  }

  auto rank = topo_rank(g);
  std::vector<std::string> lines;
  lines.reserve(n);
  for (const auto& a : g.arcs()) lines.push_back(format_arc(g, a));
  auto child_less = [&](ArcIndex x, ArcIndex y) {
    const auto& sx = idx.spans_[x];
    const auto& sy = idx.spans_[y];
    if (sx.lo != sy.lo) return sx.lo < sy.lo;
    auto kx = std::make_tuple(rank[g.source(x)], rank[g.target(x)]);
    auto ky = std::make_tuple(rank[g.source(y)], rank[g.target(y)]);
    if (kx != ky) return kx < ky;
    return lines[x] < lines[y];
  };

  std::vector<ArcIndex> maximal;
  for (ArcIndex a = 0; a < n; ++a) {
    if (!has_parent[a]) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end(), [&](ArcIndex x, ArcIndex y) {
    return idx.type_rank_[x] < idx.type_rank_[y];
  });
  for (ArcIndex p : maximal) {
    auto children = dominated[p];
    std::sort(children.begin(), children.end(), child_less);
    idx.entries_.push_back(Entry{p, std::move(children)});
  }
  return idx;
}

std::string HierarchyIndex::text(bool preserve_times) const {
  // Maximal arcs with the same non-empty child list form one group; a
  // childless arc stands alone. Groups are ordered by span.
  std::vector<std::vector<const Entry*>> groups;
  std::map<std::vector<ArcIndex>, std::size_t> group_of;
  for (const auto& e : entries_) {
    if (e.children.empty()) {
      groups.push_back({&e});
      continue;
    }
    auto [it, inserted] = group_of.emplace(e.children, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&e);
  }
  auto key = [&](const std::vector<const Entry*>& grp) {
    const TimeRef* lo = nullptr;
    const TimeRef* hi = nullptr;
    for (const Entry* e : grp) {
      const auto& s = spans_[e->arc];
      if (!lo || s.lo < *lo) lo = &s.lo;
      if (!hi || *hi < s.hi) hi = &s.hi;
    }
    return std::make_tuple(*lo, *hi, type_rank_[grp.front()->arc]);
  };
  std::stable_sort(groups.begin(), groups.end(),
                   [&](const auto& a, const auto& b) {
                     auto ka = key(a);
                     auto kb = key(b);
                     if (std::get<0>(ka) != std::get<0>(kb)) {
                       return std::get<0>(ka) < std::get<0>(kb);
                     }
                     if (std::get<1>(ka) != std::get<1>(kb)) {
                       return std::get<1>(kb) < std::get<1>(ka);
                     }
                     return std::get<2>(ka) < std::get<2>(kb);
                   });
  std::string out;
  const std::string indent(8, ' ');
  for (const auto& grp : groups) {
    for (const Entry* e : grp) {
      out += format_arc(graph_, graph_.arcs()[e->arc], preserve_times) + "\n";
    }
    for (ArcIndex c : grp.front()->children) {
      out += indent + format_arc(graph_, graph_.arcs()[c], preserve_times) + "\n";
    }
  }
  return out;
}

}  // namespace ag
