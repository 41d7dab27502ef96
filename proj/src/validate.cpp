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


#include "ag/validate.hpp"

#include <algorithm>
#include <queue>

#include <json.hpp>

#include "ag/errors.hpp"

namespace ag {
namespace {

std::vector<std::string_view> words_of(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < s.size()) {
    while (i < s.size() && blank(s[i])) ++i;
    std::size_t b = i;
    while (i < s.size() && !blank(s[i])) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F f) {
  std::size_t pos = 0;
  std::size_t number = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++number;
    auto w = words_of(line);
    if (w.empty() || w[0][0] == '#') continue;
    f(w, number);
  }
}

std::string time_str(const TimeRef& t) { return t.str(); }

}  // namespace

std::string_view to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

std::string Locus::str() const {
  if (node) return "<" + node->str() + "/>";
  if (arc) {
    return "<" + arc->src.str() + "/> " + arc->label.type() + "/" +
           escape_content(arc->label.content()) + " <" + arc->dst.str() + "/>";
  }
  return "-";
}

ValidationReport::ValidationReport(std::vector<Finding> findings)
    : findings_(std::move(findings)) {
  sort();
}

std::size_t ValidationReport::errors() const {
  return std::count_if(findings_.begin(), findings_.end(),
                       [](const Finding& f) { return f.severity == Severity::Error; });
}

std::size_t ValidationReport::warnings() const { return findings_.size() - errors(); }

void ValidationReport::add(Finding f) {
  findings_.push_back(std::move(f));
  sort();
}

void ValidationReport::add(const ValidationReport& other) {
  findings_.insert(findings_.end(), other.findings_.begin(), other.findings_.end());
  sort();
}

void ValidationReport::promote(const std::set<std::string>& codes) {
  for (auto& f : findings_) {
    if (codes.count(f.code)) f.severity = Severity::Error;
  }
}

void ValidationReport::sort() {
  std::stable_sort(findings_.begin(), findings_.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.locus, a.code, a.message) < std::tie(b.locus, b.code, b.message);
  });
}

std::string ValidationReport::text() const {
  std::string out;
  for (const auto& f : findings_) {
    out += std::string(to_string(f.severity)) + " " + f.code + " " + f.locus.str() + " " +
           f.message + "\n";
  }
  return out;
}

std::string ValidationReport::json() const {
  nlohmann::json doc;
  doc["errors"] = errors();
  doc["warnings"] = warnings();
  doc["findings"] = nlohmann::json::array();
  for (const auto& f : findings_) {
    nlohmann::json locus;
    if (f.locus.node) locus["node"] = f.locus.node->str();
    if (f.locus.arc) {
      locus["arc"] = {{"src", f.locus.arc->src.str()},
                      {"label", f.locus.arc->label.str()},
                      {"dst", f.locus.arc->dst.str()}};
    }
    doc["findings"].push_back({{"severity", to_string(f.severity)},
                               {"code", f.code},
                               {"locus", locus},
                               {"message", f.message}});
  }
  return doc.dump(2) + "\n";
}

ValidationReport validate_structure(const GraphParts& parts, const StructureOptions& opts) {
  std::vector<Finding> out;

  std::map<NodeId, std::vector<const Arc*>> outgoing;
  std::map<NodeId, std::size_t> indegree;
  for (const auto& [n, t] : parts.anchors) indegree.emplace(n, 0);
  for (const auto& a : parts.arcs) {
    outgoing[a.src].push_back(&a);
    indegree.emplace(a.src, 0);
    ++indegree[a.dst];
  }

  // Kahn's algorithm; nodes left over lie on or behind a cycle.
  std::vector<NodeId> order;
  std::map<NodeId, std::size_t> remaining = indegree;
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [n, d] : remaining) {
    if (d == 0) ready.push(n);
  }
  while (!ready.empty()) {
    NodeId n = ready.top();
    ready.pop();
    order.push_back(n);
    for (const Arc* a : outgoing[n]) {
      if (--remaining[a->dst] == 0) ready.push(a->dst);
    }
  }

  if (order.size() != indegree.size()) {
    // Walk forward along unfinished nodes until one repeats.
    NodeId start = std::find_if(remaining.begin(), remaining.end(),
                                [](const auto& kv) { return kv.second > 0; })
                       ->first;
    std::vector<NodeId> path;
    std::map<NodeId, std::size_t> seen;
    NodeId n = start;
    while (!seen.count(n)) {
      seen.emplace(n, path.size());
      path.push_back(n);
      for (const Arc* a : outgoing[n]) {
        if (remaining[a->dst] > 0) {
          n = a->dst;
          break;
        }
      }
    }
    std::vector<NodeId> cycle(path.begin() + seen[n], path.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    std::string message = "cycle through";
    for (const auto& c : cycle) message += " " + c.str();
    message += " " + cycle.front().str();
    out.push_back({Severity::Error, "cycle", Locus::of(cycle.front()), message});
    return ValidationReport(std::move(out));
  }

  auto time_of = [&](const NodeId& n) -> const TimeRef* {
    auto it = parts.anchors.find(n);
    return it == parts.anchors.end() ? nullptr : &it->second;
  };

  // Latest time on any chain ending at each node.
  std::map<NodeId, const TimeRef*> latest;
  for (const auto& n : order) {
    const TimeRef* here = latest.count(n) ? latest[n] : nullptr;
    if (const TimeRef* t = time_of(n); t && (!here || *here < *t)) here = t;
    latest[n] = here;
    for (const Arc* a : outgoing[n]) {
      const TimeRef* t = time_of(a->dst);
      if (here && t && *t < *here) {
        out.push_back({Severity::Error, "order-violation", Locus::of(*a),
                       "reaches time " + time_str(*t) + " after time " + time_str(*here)});
      }
      const TimeRef*& next = latest[a->dst];
      if (here && (!next || *next < *here)) next = here;
    }
  }

  if (opts.required != AnchorClass::General) {
    for (const auto& [n, d] : indegree) {
      if (time_of(n)) continue;
      bool no_out = outgoing[n].empty();
      bool no_in = d == 0;
      if (no_in) {
        out.push_back({Severity::Error, "dangling-source", Locus::of(n),
                       "unanchored node with no incoming arc"});
      }
      if (no_out) {
        out.push_back({Severity::Error, "dangling-sink", Locus::of(n),
                       "unanchored node with no outgoing arc"});
      }
      if (!no_in && !no_out && opts.required == AnchorClass::TotallyAnchored) {
        out.push_back({Severity::Error, "unanchored-node", Locus::of(n), "node has no time"});
      }
    }
  }

  if (std::none_of(out.begin(), out.end(),
                   [](const Finding& f) { return f.code == "order-violation"; })) {
    AnnotationGraph g = AnnotationGraph::build(parts);
    for (const auto& a : g.arcs()) {
      const TimeRef* s = g.time(a.src);
      const TimeRef* d = g.time(a.dst);
      if (s && d) continue;  // an instant, or an ordinary timed arc
      auto lo = glb(g, a);
      auto hi = lub(g, a);
      if (lo && hi && *lo == *hi) {
        out.push_back({Severity::Warning, "zero-length", Locus::of(a),
                       "span collapses to the single time " + time_str(*lo)});
      }
    }
  }
  return ValidationReport(std::move(out));
}

ValidationReport validate_structure(const AnnotationGraph& g, const StructureOptions& opts) {
  return validate_structure(g.parts(), opts);
}

ValidationReport validate_lines(std::span<const TupleLine> lines, const StructureOptions& opts) {
  GraphParts parts;
  std::vector<Finding> conflicts;
  std::set<NodeId> reported;
  auto note = [&](const NodeId& n, const std::optional<TimeRef>& t) {
    if (!t) return;
    auto [it, inserted] = parts.anchors.emplace(n, *t);
    if (!inserted && it->second != *t && reported.insert(n).second) {
      conflicts.push_back({Severity::Error, "anchor-conflict", Locus::of(n),
                           "written with times " + it->second.str() + " and " + t->str()});
    }
  };
  for (const auto& l : lines) {
    note(l.src_id, l.src_time);
    note(l.dst_id, l.dst_time);
    parts.arcs.insert(Arc{l.src_id, l.label, l.dst_id});
  }
  ValidationReport report = validate_structure(parts, opts);
  for (auto& f : conflicts) report.add(std::move(f));
  return report;
}

Vocabulary parse_vocabulary(std::string_view text) {
  Vocabulary out;
  for_each_line(text, [&](const std::vector<std::string_view>& w, std::size_t number) {
    std::string type(w[0]);
    std::size_t first = 1;
    if (type.size() > 1 && type.back() == ':') {
      type.pop_back();
    } else if (w.size() > 1 && w[1] == ":") {
      first = 2;
    } else {
      throw SyntaxError(number, 1, "expected 'TYPE: item item ...'");
    }
    if (!Label::valid_type(type)) throw SyntaxError(number, 1, "bad type '" + type + "'");
    auto& items = out[type];
    for (std::size_t i = first; i < w.size(); ++i) {
      try {
        items.insert(unescape_content(w[i]));
      } catch (const InvalidValue& e) {
        throw SyntaxError(number, 0, e.what());
      }
    }
  });
  return out;
}

ValidationReport validate_content(const AnnotationGraph& g, const Vocabulary& vocab,
                                  Severity severity) {
  std::vector<Finding> out;
  for (const auto& a : g.arcs()) {
    auto it = vocab.find(a.label.type());
    if (it == vocab.end() || it->second.count(a.label.content())) continue;
    out.push_back({severity, "content-not-permitted", Locus::of(a),
                   "'" + a.label.content() + "' is not permitted for type " + a.label.type()});
  }
  return ValidationReport(std::move(out));
}

ContainmentRules parse_containment(std::string_view text) {
  ContainmentRules out;
  for_each_line(text, [&](const std::vector<std::string_view>& w, std::size_t number) {
    if (w.size() != 3 || w[1] != "contains" || !Label::valid_type(w[0]) ||
        !Label::valid_type(w[2])) {
      throw SyntaxError(number, 1, "expected 'OUTER contains INNER'");
    }
    out.emplace(std::string(w[0]), std::string(w[2]));
  });
  return out;
}

ValidationReport validate_hierarchy(const AnnotationGraph& g, const TypeOrder& order,
                                    const ContainmentRules& rules,
                                    const HierarchyOptions& opts) {
  for (const auto& [outer, inner] : rules) {
    if (order.higher(inner, outer)) {
      throw InvalidTypeOrder("rule '" + outer + " contains " + inner +
                             "' contradicts the type order");
    }
  }
  std::map<std::string, std::vector<const Arc*>> by_type;
  for (const auto& a : g.arcs()) by_type[a.label.type()].push_back(&a);

  std::vector<Finding> out;
  for (const auto& [outer, inner] : rules) {
    const auto& outers = by_type[outer];
    for (const Arc* q : by_type[inner]) {
      bool covered = std::any_of(outers.begin(), outers.end(), [&](const Arc* p) {
        return includes(g, *p, *q, opts.mode);
      });
      if (!covered) {
        out.push_back({opts.severity, "uncovered", Locus::of(*q),
                       "not inside any " + outer + " arc"});
      }
    }
  }
  return ValidationReport(std::move(out));
}

}  // namespace ag
