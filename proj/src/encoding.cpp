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


#include "ag/encoding.hpp"

#include <algorithm>
#include <map>

namespace ag {
namespace {

constexpr char kHex[] = "0123456789ABCDEF";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

bool is_blank(char c) { return c == ' ' || c == '\t'; }

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_blanks(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::pair<NodeId, std::optional<TimeRef>> parse_node(const Token& tok,
                                                     std::size_t lineno) {
  std::string_view t = tok.text;
  if (t.size() < 3 || t.front() != '<' || t.back() != '>') {
    throw SyntaxError(lineno, tok.column,
                      "expected <id/time>, got '" + std::string(t) + "'");
  }
  t = t.substr(1, t.size() - 2);
  auto slash = t.find('/');
  if (slash == std::string_view::npos) {
    throw SyntaxError(lineno, tok.column, "node without '/'");
  }
  std::string id(t.substr(0, slash));
  if (!NodeId::valid(id)) {
    throw SyntaxError(lineno, tok.column + 1, "invalid node id '" + id + "'");
  }
  std::string_view time = t.substr(slash + 1);
  if (time.empty()) return {NodeId(id), std::nullopt};
  try {
    return {NodeId(id), TimeRef::parse(time)};
  } catch (const InvalidValue& e) {
    throw SyntaxError(lineno, tok.column + slash + 2, e.what());
  }
}

std::string format_node(const NodeId& id, const std::optional<TimeRef>& t,
                        bool preserve) {
  std::string out = "<" + id.str() + "/";
  if (t) out += t->str(preserve);
  return out + ">";
}

std::optional<TimeRef> time_of(const AnnotationGraph& g, const NodeId& id) {
  if (const TimeRef* t = g.time(id)) return *t;
  return std::nullopt;
}

void record_anchor(std::map<NodeId, TimeRef>& anchors, const NodeId& id,
                   const std::optional<TimeRef>& t) {
  if (!t) return;
  auto [it, inserted] = anchors.emplace(id, *t);
  if (!inserted && it->second != *t) {
    throw AnchorConflict(id.str(), it->second.str(), t->str());
  }
}

}  // namespace

std::string escape_content(std::string_view content) {
  std::string out;
  out.reserve(content.size());
  for (char c : content) {
    switch (c) {
      case ' ':
      case '\t':
      case '\r':
      case '\n':
      case '<':
      case '>':
      case '%': {
        auto u = static_cast<unsigned char>(c);
        out += '%';
        out += kHex[u >> 4];
        out += kHex[u & 0xF];
        break;
      }
      default:
        out += c;
    }
  }
  return out;
}

std::string unescape_content(std::string_view content) {
  std::string out;
  out.reserve(content.size());
  for (std::size_t i = 0; i < content.size(); ++i) {
    if (content[i] != '%') {
      out += content[i];
      continue;
    }
    if (i + 2 >= content.size()) {
      throw InvalidValue("truncated escape in '" + std::string(content) + "'");
    }
    int hi = hex_value(content[i + 1]);
    int lo = hex_value(content[i + 2]);
    if (hi < 0 || lo < 0) {
      throw InvalidValue("bad escape in '" + std::string(content) + "'");
    }
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::string format_line(const TupleLine& line, bool preserve_times) {
  return format_node(line.src_id, line.src_time, preserve_times) + " " +
         line.label.type() + "/" + escape_content(line.label.content()) + " " +
         format_node(line.dst_id, line.dst_time, preserve_times);
}

TupleLine parse_line(std::string_view line, std::size_t lineno) {
  auto tokens = split_blanks(line);
  if (tokens.size() != 3) {
    std::size_t col = tokens.size() > 3 ? tokens[3].column : line.size() + 1;
    throw SyntaxError(lineno, col,
                      "expected 3 fields, found " + std::to_string(tokens.size()));
  }
  auto [src, src_time] = parse_node(tokens[0], lineno);
  auto [dst, dst_time] = parse_node(tokens[2], lineno);
  std::string_view label = tokens[1].text;
  auto slash = label.find('/');
  if (slash == std::string_view::npos || slash == 0) {
    throw SyntaxError(lineno, tokens[1].column,
                      "expected type/content, got '" + std::string(label) + "'");
  }
  std::string type(label.substr(0, slash));
  if (!Label::valid_type(type) || type.find_first_of("<>") != std::string::npos) {
    throw SyntaxError(lineno, tokens[1].column, "invalid label type '" + type + "'");
  }
  std::string content;
  try {
    content = unescape_content(label.substr(slash + 1));
  } catch (const InvalidValue& e) {
    throw SyntaxError(lineno, tokens[1].column + slash + 1, e.what());
  }
  return TupleLine{std::move(src), std::move(src_time),
                   Label(std::move(type), std::move(content)), std::move(dst),
                   std::move(dst_time)};
}

std::vector<TupleLine> lines_of(const AnnotationGraph& g) {
  std::vector<TupleLine> out;
  out.reserve(g.arc_count());
  for (const auto& a : g.arcs()) {
    out.push_back(
        TupleLine{a.src, time_of(g, a.src), a.label, a.dst, time_of(g, a.dst)});
  }
  return out;
}

std::string format_arc(const AnnotationGraph& g, const Arc& arc,
                       bool preserve_times) {
  return format_line(TupleLine{arc.src, time_of(g, arc.src), arc.label, arc.dst,
                               time_of(g, arc.dst)},
                     preserve_times);
}

std::string serialize(const AnnotationGraph& g, const SerializeOptions& opts) {
  std::vector<std::string> rows;
  rows.reserve(g.arc_count());
  for (const auto& line : lines_of(g)) {
    rows.push_back(format_line(line, opts.preserve_times));
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& c : opts.comments) out += "# " + c + "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

std::vector<TupleLine> parse_lines(std::string_view text) {
  std::vector<TupleLine> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back(parse_line(line, lineno));
  }
  return out;
}

AnnotationGraph graph_from_lines(std::span<const TupleLine> lines) {
  GraphParts parts;
  for (const auto& l : lines) {
    record_anchor(parts.anchors, l.src_id, l.src_time);
    record_anchor(parts.anchors, l.dst_id, l.dst_time);
    parts.arcs.insert(Arc{l.src_id, l.label, l.dst_id});
  }
  return AnnotationGraph::build(std::move(parts));
}

AnnotationGraph parse(std::string_view text) {
  auto lines = parse_lines(text);
  return graph_from_lines(lines);
}

AnnotationGraph merge(std::span<const std::string> texts) {
  std::vector<TupleLine> all;
  for (const auto& t : texts) {
    auto lines = parse_lines(t);
    all.insert(all.end(), lines.begin(), lines.end());
  }
  return graph_from_lines(all);
}

ArcDelta delta(const AnnotationGraph& old_graph,
               const AnnotationGraph& new_graph) {
  auto old_lines = lines_of(old_graph);
  auto new_lines = lines_of(new_graph);
  std::set<TupleLine> a(old_lines.begin(), old_lines.end());
  std::set<TupleLine> b(new_lines.begin(), new_lines.end());
  ArcDelta d;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(d.removed, d.removed.end()));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::inserter(d.added, d.added.end()));
  return d;
}

AnnotationGraph apply(const ArcDelta& d, const AnnotationGraph& g) {
  auto base = lines_of(g);
  std::set<TupleLine> lines(base.begin(), base.end());
  for (const auto& l : d.removed) lines.erase(l);
  lines.insert(d.added.begin(), d.added.end());
  std::vector<TupleLine> v(lines.begin(), lines.end());
  return graph_from_lines(v);
}

std::string format_delta(const ArcDelta& d, bool preserve_times) {
  auto block = [&](const std::set<TupleLine>& lines, const char* mark) {
    std::vector<std::string> rows;
    for (const auto& l : lines) rows.push_back(mark + format_line(l, preserve_times));
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& r : rows) out += r + "\n";
    return out;
  };
  return block(d.removed, "- ") + block(d.added, "+ ");
}

ArcDelta parse_delta(std::string_view text) {
  ArcDelta d;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.size() < 2 || (line[0] != '-' && line[0] != '+') || line[1] != ' ') {
      throw SyntaxError(lineno, 1, "expected '- ' or '+ '");
    }
    auto tl = parse_line(line.substr(2), lineno);
    (line[0] == '-' ? d.removed : d.added).insert(std::move(tl));
  }
  for (const auto& l : d.added) {
    if (d.removed.count(l)) {
      throw SyntaxError(0, 0, "line both added and removed: " + format_line(l));
    }
  }
  return d;
}

}  // namespace ag
