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


#include "common.hpp"

#include <cctype>
#include <charconv>

namespace ag::detail {

NodeId GraphBuilder::fresh() {
  return NodeId(opts_.node_prefix + std::to_string(next_++));
}

void GraphBuilder::anchor(const NodeId& n, const TimeRef& t, std::size_t line,
                          std::size_t column) {
  auto [it, inserted] = parts_.anchors.emplace(n, t);
  if (!inserted && it->second != t) {
    throw SyntaxError(line, column,
                      "conflicting times " + it->second.str() + " and " + t.str() +
                          " for one boundary");
  }
}

const TimeRef* GraphBuilder::time(const NodeId& n) const {
  auto it = parts_.anchors.find(n);
  return it == parts_.anchors.end() ? nullptr : &it->second;
}

void GraphBuilder::arc(const NodeId& src, const std::string& type,
                       std::string content, const NodeId& dst) {
  parts_.arcs.insert(Arc{src, Label(type, std::move(content)), dst});
}

std::string GraphBuilder::type_for(const std::string& tier,
                                   const std::string& fallback) const {
  auto it = opts_.type_prefix_map.find(tier);
  return it == opts_.type_prefix_map.end() ? fallback : it->second;
}

ImportedGraph GraphBuilder::finish(std::vector<std::string> comments,
                                   std::size_t line) {
  // Boundaries that ended up with no arcs cannot be serialized; drop them.
  std::set<NodeId> used;
  for (const auto& a : parts_.arcs) {
    used.insert(a.src);
    used.insert(a.dst);
  }
  std::erase_if(parts_.anchors, [&](const auto& kv) { return !used.count(kv.first); });
  try {
    return ImportedGraph{AnnotationGraph::build(std::move(parts_)),
                         std::move(comments)};
  } catch (const OrderViolation& e) {
    throw SyntaxError(line, 0, std::string("times out of order: ") + e.what());
  } catch (const CycleError& e) {
    throw SyntaxError(line, 0, e.what());
  }
}

std::vector<SourceLine> split_lines(std::string_view text) {
  std::vector<SourceLine> out;
  std::size_t pos = 0;
  std::size_t n = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({line, ++n});
    pos = nl + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

bool is_integer(std::string_view s) {
  if (!s.empty() && s[0] == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

long long to_integer(std::string_view s, std::size_t line, std::size_t column) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw SyntaxError(line, column, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

TimeRef to_time(std::string_view s, std::size_t line, std::size_t column) {
  try {
    return TimeRef::parse(s);
  } catch (const InvalidValue&) {
    throw SyntaxError(line, column, "expected a time in seconds, got '" +
                                        std::string(s) + "'");
  }
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace ag::detail
