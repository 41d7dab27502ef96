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


#include "ag/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "ag/equivalence.hpp"
#include "ag/errors.hpp"
#include "ag/index.hpp"

namespace ag {
namespace {

using ArcIndex = AnnotationGraph::ArcIndex;
using NodeIndex = AnnotationGraph::NodeIndex;

double seconds(const TimeRef& t) { return t.value().convert_to<double>(); }

// Timed: anchors at their times, other nodes interpolated by path length
// between the nearest anchors on either side. Untimed: longest path length
// from a source.
std::vector<double> node_positions(const AnnotationGraph& g, bool timed) {
  std::size_t n = g.node_count();
  auto order = g.topological_order();
  std::vector<double> pos(n, 0);
  if (!timed) {
    for (NodeIndex v : order) {
      for (ArcIndex a : g.incoming(v)) pos[v] = std::max(pos[v], pos[g.source(a)] + 1);
    }
    return pos;
  }
  auto comp = component_ids(g);
  std::map<std::size_t, std::pair<double, double>> range;
  for (NodeIndex v = 0; v < n; ++v) {
    const TimeRef* t = g.time(v);
    if (!t) continue;
    double s = seconds(*t);
    auto [it, fresh] = range.try_emplace(comp[v], s, s);
    if (!fresh) {
      it->second.first = std::min(it->second.first, s);
      it->second.second = std::max(it->second.second, s);
    }
  }
  std::vector<double> left(n), right(n);
  std::vector<int> dl(n, 0), dr(n, 0);
  for (NodeIndex v : order) {
    if (const TimeRef* t = g.time(v)) {
      left[v] = seconds(*t);
      continue;
    }
    bool any = false;
    for (ArcIndex a : g.incoming(v)) {
      NodeIndex u = g.source(a);
      if (!any || left[u] > left[v] || (left[u] == left[v] && dl[u] + 1 > dl[v])) {
        left[v] = left[u];
        dl[v] = dl[u] + 1;
        any = true;
      }
    }
    if (!any) left[v] = range[comp[v]].first;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeIndex v = *it;
    if (const TimeRef* t = g.time(v)) {
      right[v] = seconds(*t);
      continue;
    }
    bool any = false;
    for (ArcIndex a : g.outgoing(v)) {
      NodeIndex w = g.target(a);
      if (!any || right[w] < right[v] || (right[w] == right[v] && dr[w] + 1 > dr[v])) {
        right[v] = right[w];
        dr[v] = dr[w] + 1;
        any = true;
      }
    }
    if (!any) right[v] = range[comp[v]].second;
  }
  for (NodeIndex v = 0; v < n; ++v) {
    int total = dl[v] + dr[v];
    pos[v] = total == 0 ? left[v] : left[v] + (right[v] - left[v]) * dl[v] / total;
  }
  for (NodeIndex v : order) {
    for (ArcIndex a : g.incoming(v)) pos[v] = std::max(pos[v], pos[g.source(a)]);
  }
  return pos;
}

struct Extent {
  double lo;
  double hi;
};

bool clash(Extent a, Extent b) {
  bool pa = a.lo == a.hi;
  bool pb = b.lo == b.hi;
  if (pa && pb) return a.lo == b.lo;
  if (pa) return b.lo < a.lo && a.lo < b.hi;
  if (pb) return a.lo < b.lo && b.lo < a.hi;
  return a.lo < b.hi && b.lo < a.hi;
}

class Layouter {
 public:
  Layouter(const AnnotationGraph& g, std::vector<double> pos) : g_(g), pos_(std::move(pos)) {}

  Extent extent(ArcIndex a) const { return {pos_[g_.source(a)], pos_[g_.target(a)]}; }

  // An arc or a chain of same-level arcs joined at shared nodes. Chains
  // are packed whole so a turn's words stay on one row.
  struct Unit {
    std::vector<ArcIndex> arcs;
    Extent span;
    std::string key;
  };

  static bool fits(const std::vector<const Unit*>& row, const Unit& u) {
    return std::none_of(row.begin(), row.end(),
                        [&](const Unit* v) { return clash(u.span, v->span); });
  }

  // First fit in left-edge order; units must come sorted.
  static std::vector<std::vector<const Unit*>> pack(const std::vector<const Unit*>& units) {
    std::vector<std::vector<const Unit*>> rows;
    for (const Unit* u : units) {
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const std::vector<const Unit*>& row) { return fits(row, *u); });
      if (it == rows.end()) {
        rows.push_back({u});
      } else {
        it->push_back(u);
      }
    }
    return rows;
  }

  std::vector<Unit> units(const std::vector<ArcIndex>& arcs,
                          const std::set<std::string>& higher) const {
    std::map<NodeIndex, NodeIndex> parent;
    std::function<NodeIndex(NodeIndex)> root = [&](NodeIndex v) {
      auto it = parent.find(v);
      if (it == parent.end() || it->second == v) return v;
      return it->second = root(it->second);
    };
    // Nodes are keyed per type so two types sharing a level stay apart.
    std::map<std::pair<std::string, NodeIndex>, NodeIndex> ids;
    auto id = [&](ArcIndex a, NodeIndex v) {
      return ids.try_emplace({g_.arcs()[a].label.type(), v}, ids.size()).first->second;
    };
    for (ArcIndex a : arcs) {
      NodeIndex s = root(id(a, g_.source(a)));
      NodeIndex d = root(id(a, g_.target(a)));
      if (s != d) parent[std::max(s, d)] = std::min(s, d);
    }
    std::map<NodeIndex, Unit> by_root;
    for (ArcIndex a : arcs) {
      Unit& u = by_root[root(id(a, g_.source(a)))];
      Extent e = extent(a);
      if (u.arcs.empty()) {
        u.span = e;
      } else {
        u.span = {std::min(u.span.lo, e.lo), std::max(u.span.hi, e.hi)};
      }
      u.arcs.push_back(a);
    }
    // A chain whose own arcs overlap (parallel arcs, say) is no unit.
    std::vector<Unit> split;
    for (auto& [r, u] : by_root) {
      std::sort(u.arcs.begin(), u.arcs.end(), [&](ArcIndex a, ArcIndex b) {
        auto ea = extent(a);
        auto eb = extent(b);
        return std::tie(ea.lo, ea.hi, a) < std::tie(eb.lo, eb.hi, b);
      });
      bool overlapping = false;
      for (std::size_t i = 0; i < u.arcs.size() && !overlapping; ++i) {
        for (std::size_t j = i + 1; j < u.arcs.size(); ++j) {
          Extent ei = extent(u.arcs[i]);
          Extent ej = extent(u.arcs[j]);
          if (ej.lo > ei.hi) break;
          if (clash(ei, ej)) {
            overlapping = true;
            break;
          }
        }
      }
      if (!overlapping) {
        split.push_back(std::move(u));
        continue;
      }
      for (ArcIndex a : u.arcs) split.push_back({{a}, extent(a), ""});
    }
    std::set<ArcIndex> level(arcs.begin(), arcs.end());
    std::vector<Unit> out;
    for (auto& u : split) {
      // Key: the narrowest arc of a higher level that covers the unit and
      // touches it, else the content of a lone arc.
      std::optional<std::pair<double, std::string>> best;
      std::set<NodeIndex> nodes;
      for (ArcIndex a : u.arcs) {
        nodes.insert(g_.source(a));
        nodes.insert(g_.target(a));
      }
      for (NodeIndex v : nodes) {
        for (auto list : {g_.outgoing(v), g_.incoming(v)}) {
          for (ArcIndex a : list) {
            if (level.count(a) || !higher.count(g_.arcs()[a].label.type())) continue;
            Extent e = extent(a);
            if (e.lo > u.span.lo || e.hi < u.span.hi) continue;
            std::pair<double, std::string> cand{e.hi - e.lo, g_.arcs()[a].label.str()};
            if (!best || cand < *best) best = cand;
          }
        }
      }
      if (best) {
        u.key = best->second;
      } else if (u.arcs.size() == 1) {
        u.key = g_.arcs()[u.arcs[0]].label.content();
      }
      out.push_back(std::move(u));
    }
    std::sort(out.begin(), out.end(), [](const Unit& a, const Unit& b) {
      return std::tie(a.span.lo, a.span.hi, a.arcs.front()) <
             std::tie(b.span.lo, b.span.hi, b.arcs.front());
    });
    return out;
  }

  // Packs a level. When it needs several rows and the units fall into no
  // more keyed groups than that, each group gets rows of its own, so one
  // speaker's turns and words stay together.
  std::vector<std::vector<ArcIndex>> level_rows(const std::vector<ArcIndex>& arcs,
                                                const std::set<std::string>& higher) const {
    auto us = units(arcs, higher);
    std::vector<const Unit*> all;
    for (const auto& u : us) all.push_back(&u);
    auto packed = pack(all);
    if (packed.size() > 1) {
      std::vector<std::string> keys;
      std::map<std::string, std::vector<const Unit*>> groups;
      for (const Unit* u : all) {
        if (!groups.count(u->key)) keys.push_back(u->key);
        groups[u->key].push_back(u);
      }
      if (keys.size() <= packed.size()) {
        packed.clear();
        for (const auto& k : keys) {
          for (auto& row : pack(groups[k])) packed.push_back(std::move(row));
        }
      }
    }
    std::vector<std::vector<ArcIndex>> out;
    for (const auto& row : packed) {
      std::vector<ArcIndex> arcs_in_row;
      for (const Unit* u : row) arcs_in_row.insert(arcs_in_row.end(), u->arcs.begin(), u->arcs.end());
      std::sort(arcs_in_row.begin(), arcs_in_row.end(), [&](ArcIndex a, ArcIndex b) {
        auto ea = extent(a);
        auto eb = extent(b);
        return std::tie(ea.lo, ea.hi, a) < std::tie(eb.lo, eb.hi, b);
      });
      out.push_back(std::move(arcs_in_row));
    }
    return out;
  }

  std::vector<ScoreRow> rows(const RenderOptions& opts) const {
    std::map<std::string, std::vector<ArcIndex>> by_type;
    for (ArcIndex a = 0; a < g_.arc_count(); ++a) {
      const std::string& t = g_.arcs()[a].label.type();
      if (!opts.class_types.count(t)) by_type[t].push_back(a);
    }
    std::map<int, std::vector<std::string>> assigned;
    std::vector<std::pair<double, std::string>> rest;
    for (const auto& [type, arcs] : by_type) {
      if (auto it = opts.level_assignment.find(type); it != opts.level_assignment.end()) {
        if (it->second < 0) throw InvalidValue("negative level for type " + type);
        assigned[it->second].push_back(type);
        continue;
      }
      double total = 0;
      for (ArcIndex a : arcs) total += extent(a).hi - extent(a).lo;
      rest.emplace_back(-total / static_cast<double>(arcs.size()), type);
    }
    std::sort(rest.begin(), rest.end());
    std::vector<std::vector<std::string>> levels;
    for (auto& [level, types] : assigned) levels.push_back(types);
    for (auto& [width, type] : rest) levels.push_back({type});

    std::vector<ScoreRow> out;
    std::set<std::string> higher;
    for (const auto& types : levels) {
      std::vector<ArcIndex> arcs;
      std::string name;
      for (const auto& t : types) {
        arcs.insert(arcs.end(), by_type[t].begin(), by_type[t].end());
        name += (name.empty() ? "" : ",") + t;
      }
      for (auto& row : level_rows(arcs, higher)) out.push_back({name, std::move(row)});
      higher.insert(types.begin(), types.end());
    }
    return out;
  }

  const std::vector<double>& positions() const { return pos_; }

 private:
  const AnnotationGraph& g_;
  std::vector<double> pos_;
};

struct Connector {
  NodeIndex node;
  std::vector<std::size_t> rows;      // rows with an arc at the node
  std::vector<std::size_t> blockers;  // other rows with a rectangle over it
};

std::vector<Connector> connectors(const AnnotationGraph& g, const std::vector<ScoreRow>& rows,
                                  const std::vector<double>& pos) {
  std::map<NodeIndex, std::set<std::size_t>> incident;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (ArcIndex a : rows[r].arcs) {
      incident[g.source(a)].insert(r);
      incident[g.target(a)].insert(r);
    }
  }
  std::vector<Connector> out;
  for (const auto& [v, rs] : incident) {
    if (rs.size() < 2) continue;
    Connector c{v, {rs.begin(), rs.end()}, {}};
    double x = pos[v];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rs.count(r)) continue;
      bool covers = std::any_of(rows[r].arcs.begin(), rows[r].arcs.end(), [&](ArcIndex a) {
        return pos[g.source(a)] < x && x < pos[g.target(a)];
      });
      if (covers) c.blockers.push_back(r);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// `rank[r]` is row r's position from the top.
std::size_t crossings(const std::vector<Connector>& cs, const std::vector<std::size_t>& rank) {
  std::size_t n = 0;
  for (const auto& c : cs) {
    std::size_t top = rank[c.rows.front()];
    std::size_t bottom = top;
    for (auto r : c.rows) {
      top = std::min(top, rank[r]);
      bottom = std::max(bottom, rank[r]);
    }
    for (auto b : c.blockers) {
      if (top < rank[b] && rank[b] < bottom) ++n;
    }
  }
  return n;
}

std::vector<std::size_t> rank_of(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return rank;
}

// Row order with the fewest crossings found, top first; ties keep the
// earliest order in lexicographic enumeration.
std::pair<std::vector<std::size_t>, std::size_t> best_order(std::size_t n,
                                                            const std::vector<Connector>& cs) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto best = order;
  std::size_t least = crossings(cs, rank_of(order));
  if (least == 0) return {best, 0};
  if (n <= 8) {
    while (std::next_permutation(order.begin(), order.end())) {
      std::size_t c = crossings(cs, rank_of(order));
      if (c < least) {
        least = c;
        best = order;
        if (c == 0) break;
      }
    }
    return {best, least};
  }
  // Move single rows while that removes crossings.
  bool improved = true;
  for (int round = 0; improved && least > 0 && round < 100; ++round) {
    improved = false;
    for (std::size_t i = 0; i < n && least > 0; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        auto trial = best;
        auto row = trial[i];
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(j), row);
        std::size_t c = crossings(cs, rank_of(trial));
        if (c < least) {
          least = c;
          best = trial;
          improved = true;
          break;
        }
      }
    }
  }
  return {best, least};
}

const char* const kSuperscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string superscript(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (char d : digits) out += kSuperscripts[d - '0'];
  return out;
}

ScoreLayout build_layout(const AnnotationGraph& g, const RenderOptions& opts,
                         std::vector<double> pos) {
  Layouter lay(g, std::move(pos));
  ScoreLayout out;
  out.rows = lay.rows(opts);
  out.position = lay.positions();
  if (opts.level_assignment.empty() && out.rows.size() > 1) {
    auto cs = connectors(g, out.rows, out.position);
    auto [order, n] = best_order(out.rows.size(), cs);
    std::vector<ScoreRow> sorted;
    for (auto r : order) sorted.push_back(std::move(out.rows[r]));
    out.rows = std::move(sorted);
  }
  out.marks.assign(g.arc_count(), "");
  if (!opts.class_types.empty()) {
    auto classes = resolve_equivalence_classes(g, opts.class_types);
    std::map<EquivalenceClassMap::Key, std::size_t> number;
    for (const auto& [key, members] : classes.classes()) number.emplace(key, number.size() + 1);
    for (ArcIndex a = 0; a < g.arc_count(); ++a) {
      if (opts.class_types.count(g.arcs()[a].label.type())) continue;
      for (const auto& key : classes.classes_of(g, g.arcs()[a])) {
        if (!out.marks[a].empty()) out.marks[a] += ",";
        out.marks[a] += superscript(number[key]);
      }
    }
  }
  if (g.node_count() > 0) {
    auto [lo, hi] = std::minmax_element(out.position.begin(), out.position.end());
    out.start = *lo;
    out.end = *hi;
  }
  return out;
}

// --- text ---

std::vector<std::string> code_points(std::string_view s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    len = std::min(len, s.size() - i);
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::uint32_t fnv1a(std::string_view s) {
  std::uint32_t h = 2166136261u;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 16777619u;
  }
  return h;
}

const char* const kFills[] = {"░", "▒", "·", "┄"};

using Cells = std::vector<std::string>;

struct TextLine {
  std::string margin;
  Cells cells;                                  // grid lines
  std::vector<std::pair<long, std::string>> items;  // text lines
  bool grid = true;
  int row = -1;  // row lines only
};

std::string join_margin(const std::string& name, std::size_t width) {
  auto cps = code_points(name);
  if (cps.size() > width - 1) cps.resize(width - 1);
  std::string out;
  for (const auto& c : cps) out += c;
  return out + std::string(width - cps.size(), ' ');
}

std::string trim_right(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string render_text(const AnnotationGraph& g, const ScoreLayout& lay,
                        const RenderOptions& opts) {
  int width = opts.width > 0 ? opts.width : 100;
  std::size_t name_len = 4;  // "time"
  for (const auto& r : lay.rows) name_len = std::max(name_len, code_points(r.type).size());
  std::size_t margin = std::min<std::size_t>(name_len, 12) + 1;
  long page = width - static_cast<long>(margin);
  if (page < 10) {
    throw LayoutOverflow("width " + std::to_string(width) + " leaves " +
                         std::to_string(std::max(page, 0L)) +
                         " columns for the score; at least 10 are needed");
  }
  if (g.node_count() == 0) {
    return opts.timeline ? join_margin("time", margin) + [&] {
      std::string s;
      for (long i = 0; i < page; ++i) s += "─";
      return s;
    }() + "\n" : "";
  }

  double min_width = 0;
  for (const auto& r : lay.rows) {
    for (ArcIndex a : r.arcs) {
      double w = lay.position[g.target(a)] - lay.position[g.source(a)];
      if (w > 0 && (min_width == 0 || w < min_width)) min_width = w;
    }
  }
  double span = lay.end - lay.start;
  double scale = min_width > 0 ? 4 / min_width : 0;
  if (span > 0) scale = std::max(scale, static_cast<double>(page - 1) / span);
  auto col = [&](double x) { return static_cast<long>(std::llround((x - lay.start) * scale)); };
  double needed = span * scale + 1;
  if (needed > opts.max_columns) {
    throw LayoutOverflow("the score needs " + std::to_string(static_cast<long long>(needed)) +
                         " columns to give every arc room; the limit is " +
                         std::to_string(opts.max_columns));
  }
  long total = col(lay.end) + 1;

  std::vector<TextLine> lines;
  std::vector<std::size_t> row_line(lay.rows.size());
  std::vector<std::optional<std::size_t>> gap_line(lay.rows.size());
  for (std::size_t r = 0; r < lay.rows.size(); ++r) {
    row_line[r] = lines.size();
    lines.push_back({lay.rows[r].type, Cells(total, " "), {}, true, static_cast<int>(r)});
    if (opts.show_node_ids) {
      TextLine ids{"", {}, {}, false, -1};
      for (ArcIndex a : lay.rows[r].arcs) {
        for (NodeIndex v : {g.source(a), g.target(a)}) {
          ids.items.emplace_back(col(lay.position[v]), g.nodes()[v].str());
        }
      }
      lines.push_back(std::move(ids));
    }
    if (r + 1 < lay.rows.size() || opts.timeline) {
      gap_line[r] = lines.size();
      lines.push_back({"", Cells(total, " "), {}, true, -1});
    }
  }

  std::map<NodeIndex, std::set<std::size_t>> incident;
  for (std::size_t r = 0; r < lay.rows.size(); ++r) {
    const char* fill = kFills[fnv1a(lay.rows[r].type) % 4];
    Cells& cells = lines[row_line[r]].cells;
    std::vector<long> points;
    for (ArcIndex a : lay.rows[r].arcs) {
      long x0 = col(lay.position[g.source(a)]);
      long x1 = col(lay.position[g.target(a)]);
      incident[g.source(a)].insert(r);
      incident[g.target(a)].insert(r);
      if (x0 == x1) {
        points.push_back(x0);
        continue;
      }
      for (long c = x0 + 1; c < x1; ++c) cells[c] = fill;
      cells[x0] = "│";
      cells[x1] = "│";
    }
    for (long x : points) cells[x] = "◆";
  }
  for (const auto& [v, rs] : incident) {
    if (rs.size() < 2) continue;
    long x = col(lay.position[v]);
    std::size_t top = *rs.begin();
    std::size_t bottom = *rs.rbegin();
    for (std::size_t r = top; r < bottom; ++r) lines[*gap_line[r]].cells[x] = "│";
    for (std::size_t r = top + 1; r < bottom; ++r) {
      auto& cell = lines[row_line[r]].cells[x];
      if (cell == " ") cell = "│";
    }
  }
  std::optional<std::size_t> axis;
  if (opts.timeline) {
    axis = lines.size();
    lines.push_back({"time", Cells(total, "─"), {}, true, -1});
    TextLine labels{"", {}, {}, false, -1};
    std::set<long> placed;
    for (NodeIndex v : g.topological_order()) {
      const TimeRef* t = g.time(v);
      if (!t) continue;
      long x = col(lay.position[v]);
      lines[*axis].cells[x] = "┬";
      if (placed.insert(x).second) labels.items.emplace_back(x, t->str());
      auto it = incident.find(v);
      std::size_t lowest = it == incident.end() ? 0 : *it->second.rbegin();
      bool below = it == incident.end();
      for (std::size_t r = lowest; r < lay.rows.size(); ++r) {
        if (r > lowest || below) {
          auto& cell = lines[row_line[r]].cells[x];
          if (cell == " ") cell = "┊";
        }
        auto& cell = lines[*gap_line[r]].cells[x];
        if (cell == " ") cell = "┊";
      }
    }
    std::sort(labels.items.begin(), labels.items.end());
    lines.push_back(std::move(labels));
  }

  std::ostringstream out;
  for (long c0 = 0; c0 < total; c0 += page) {
    long c1 = std::min(total, c0 + page) - 1;
    if (c0 > 0) out << "\n";
    for (const auto& line : lines) {
      Cells slice;
      if (line.grid) {
        slice.assign(line.cells.begin() + c0, line.cells.begin() + c1 + 1);
      } else {
        slice.assign(c1 - c0 + 1, " ");
      }
      if (line.row >= 0) {
        for (ArcIndex a : lay.rows[line.row].arcs) {
          long x0 = col(lay.position[g.source(a)]);
          long x1 = col(lay.position[g.target(a)]);
          long lo = std::max(x0 + 1, c0);
          long hi = std::min(x1 - 1, c1);
          if (hi < lo) continue;
          auto label = code_points(g.arcs()[a].label.content() + lay.marks[a]);
          long room = hi - lo + 1;
          long k = std::min(static_cast<long>(label.size()), room);
          long at = lo + (room - k) / 2;
          for (long i = 0; i < k; ++i) slice[at - c0 + i] = label[i];
        }
      }
      if (!line.grid) {
        long next = 0;
        for (const auto& [x, text] : line.items) {
          if (x < c0 || x > c1 || x - c0 < next) continue;
          auto cps = code_points(text);
          long at = x - c0;
          long end = std::min(at + static_cast<long>(cps.size()), c1 - c0 + 1);
          for (long i = at; i < end; ++i) slice[i] = cps[i - at];
          next = end + 1;
        }
      }
      std::string s = join_margin(line.margin, margin);
      for (const auto& c : slice) s += c;
      out << trim_right(std::move(s)) << "\n";
    }
  }
  return out.str();
}

// --- SVG ---

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string color(std::string_view type) {
  double h = static_cast<double>(fnv1a(type) % 360) / 60.0;
  double s = 0.55;
  double l = 0.78;
  double c = (1 - std::fabs(2 * l - 1)) * s;
  double x = c * (1 - std::fabs(std::fmod(h, 2.0) - 1));
  double r = 0;
  double g = 0;
  double b = 0;
  switch (static_cast<int>(h)) {
    case 0:
      r = c, g = x;
      break;
    case 1:
      r = x, g = c;
      break;
    case 2:
      g = c, b = x;
      break;
    case 3:
      g = x, b = c;
      break;
    case 4:
      r = x, b = c;
      break;
    default:
      r = c, b = x;
  }
  double m = l - c / 2;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                static_cast<int>(std::lround((g + m) * 255)),
                static_cast<int>(std::lround((b + m) * 255)));
  return buf;
}

std::string render_svg(const AnnotationGraph& g, const ScoreLayout& lay,
                       const RenderOptions& opts) {
  const double margin = 90;
  const double row_height = 22;
  const double gap = 16;
  const double char_width = 6.6;
  double span = lay.end - lay.start;
  int width = opts.width;
  if (width <= 0) {
    // Wide enough for 4 px on the narrowest arc, within bounds.
    double min_width = 0;
    for (const auto& r : lay.rows) {
      for (ArcIndex a : r.arcs) {
        double w = lay.position[g.target(a)] - lay.position[g.source(a)];
        if (w > 0 && (min_width == 0 || w < min_width)) min_width = w;
      }
    }
    double wanted = min_width > 0 ? margin + 20 + span * 4 / min_width : 0;
    width = static_cast<int>(std::ceil(std::clamp(wanted, 1000.0, 20000.0)));
  }
  double plot = width - margin - 20;
  if (plot < 100) {
    throw LayoutOverflow("width " + std::to_string(width) +
                         " px leaves no room for the score; at least 210 are needed");
  }
  double scale = span > 0 ? plot / span : 0;
  for (const auto& r : lay.rows) {
    for (ArcIndex a : r.arcs) {
      double w = (lay.position[g.target(a)] - lay.position[g.source(a)]) * scale;
      if (w > 0 && w < 2) {
        throw LayoutOverflow("arc " + describe(g.arcs()[a]) + " would be " + num(w) +
                             " px wide at width " + std::to_string(width) + " px");
      }
    }
  }
  auto xpos = [&](double t) { return margin + (t - lay.start) * scale; };
  auto ypos = [&](std::size_t r) { return 10 + static_cast<double>(r) * (row_height + gap); };
  double axis = ypos(lay.rows.size()) + 10;
  double height = opts.timeline ? axis + 30 : ypos(lay.rows.size());

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << width << " " << num(height)
      << "\" font-family=\"monospace\" font-size=\"11\">\n";

  std::map<NodeIndex, std::set<std::size_t>> incident;
  for (std::size_t r = 0; r < lay.rows.size(); ++r) {
    const auto& row = lay.rows[r];
    double y = ypos(r);
    std::string fill = color(row.type);
    out << "<text x=\"4\" y=\"" << num(y + 15) << "\">" << xml_escape(row.type) << "</text>\n";
    for (ArcIndex a : row.arcs) {
      NodeIndex s = g.source(a);
      NodeIndex d = g.target(a);
      incident[s].insert(r);
      incident[d].insert(r);
      double x0 = xpos(lay.position[s]);
      double x1 = xpos(lay.position[d]);
      std::string label = g.arcs()[a].label.content() + lay.marks[a];
      if (x1 == x0) {
        out << "<polygon points=\"" << num(x0) << "," << num(y + 4) << " " << num(x0 + 4) << ","
            << num(y + 11) << " " << num(x0) << "," << num(y + 18) << " " << num(x0 - 4) << ","
            << num(y + 11) << "\" fill=\"" << fill << "\" stroke=\"#000000\"/>\n";
        continue;
      }
      out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\"" << num(x1 - x0)
          << "\" height=\"" << num(row_height) << "\" fill=\"" << fill
          << "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
      for (double x : {x0, x1}) {
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(y + row_height) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
      }
      auto cps = code_points(label);
      std::size_t fit = static_cast<std::size_t>(std::max(0.0, (x1 - x0 - 2) / char_width));
      if (fit == 0 || cps.empty()) continue;
      if (cps.size() > fit) cps.resize(fit);
      std::string shown;
      for (const auto& c : cps) shown += c;
      out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y + 15)
          << "\" text-anchor=\"middle\">" << xml_escape(shown) << "</text>\n";
    }
  }
  for (const auto& [v, rs] : incident) {
    double x = xpos(lay.position[v]);
    if (rs.size() > 1) {
      out << "<line x1=\"" << num(x) << "\" y1=\"" << num(ypos(*rs.begin()) + row_height)
          << "\" x2=\"" << num(x) << "\" y2=\"" << num(ypos(*rs.rbegin()))
          << "\" stroke=\"#000000\"/>\n";
    }
    if (opts.show_node_ids) {
      out << "<text x=\"" << num(x + 1) << "\" y=\"" << num(ypos(*rs.begin()) - 2)
          << "\" font-size=\"8\">" << xml_escape(g.nodes()[v].str()) << "</text>\n";
    }
  }
  if (opts.timeline) {
    out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(axis) << "\" x2=\""
        << num(margin + plot) << "\" y2=\"" << num(axis) << "\" stroke=\"#000000\"/>\n";
    double next = -1e300;
    std::vector<std::pair<double, std::string>> ticks;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      if (const TimeRef* t = g.time(v)) ticks.emplace_back(lay.position[v], t->str());
      if (!g.time(v)) continue;
      auto it = incident.find(v);
      double top = it == incident.end() ? axis : ypos(*it->second.rbegin()) + row_height;
      double x = xpos(lay.position[v]);
      out << "<line x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x)
          << "\" y2=\"" << num(axis) << "\" stroke=\"#666666\" stroke-dasharray=\"2,2\"/>\n";
    }
    std::sort(ticks.begin(), ticks.end());
    for (const auto& [t, text] : ticks) {
      double x = xpos(t);
      double half = static_cast<double>(text.size()) * 2.75;
      if (x - half < next) continue;
      out << "<text x=\"" << num(x) << "\" y=\"" << num(axis + 14)
          << "\" font-size=\"9\" text-anchor=\"middle\">" << xml_escape(text) << "</text>\n";
      next = x + half + 4;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

ScoreLayout layout_score(const AnnotationGraph& g, const RenderOptions& opts) {
  index_spans(g);
  return build_layout(g, opts, node_positions(g, true));
}

std::size_t count_crossings(const AnnotationGraph& g, const ScoreLayout& layout) {
  auto cs = connectors(g, layout.rows, layout.position);
  std::vector<std::size_t> rank(layout.rows.size());
  std::iota(rank.begin(), rank.end(), 0);
  return crossings(cs, rank);
}

std::string render_score(const AnnotationGraph& g, const RenderOptions& opts) {
  auto lay = layout_score(g, opts);
  return opts.output == RenderFormat::Svg ? render_svg(g, lay, opts) : render_text(g, lay, opts);
}

bool check_rightward_planar(const AnnotationGraph& g, const std::set<std::string>& class_types) {
  if (g.arc_count() == 0) return true;
  bool timed = true;
  try {
    index_spans(g);
  } catch (const NotAnchored&) {
    timed = false;
  }
  RenderOptions opts;
  opts.class_types = class_types;
  Layouter lay(g, node_positions(g, timed));
  auto rows = lay.rows(opts);
  auto cs = connectors(g, rows, lay.positions());
  return best_order(rows.size(), cs).second == 0;
}

}  // namespace ag
