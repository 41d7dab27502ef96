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


#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "common.hpp"

namespace ag {

using detail::GraphBuilder;

namespace {

struct Element {
  std::string level;
  std::string label;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::size_t line = 0;
};

struct LabFile {
  std::string level;
  std::string mark = "END";
  std::string type = "SEGMENT";
  std::size_t line = 0;
};

struct Hierarchy {
  std::vector<std::string> levels;
  std::vector<LabFile> labfiles;
  std::map<long long, Element> elements;
  std::map<std::string, std::vector<long long>> order;  // ids per level, in file order
  std::vector<std::pair<long long, std::vector<long long>>> dominance;
  std::vector<std::size_t> dominance_lines;
};

bool all_integers(const std::vector<std::string_view>& words) {
  return !words.empty() &&
         std::all_of(words.begin(), words.end(), [](auto w) { return detail::is_integer(w); });
}

std::string type_of_level(const std::string& level) {
  if (level == "Phonetic") return "S";
  if (level == "Phoneme") return "P";
  if (level == "Syllable") return "Syl";
  if (level == "Word") return "W";
  return level;
}

Hierarchy read_hierarchy(std::string_view text) {
  Hierarchy h;
  std::string section;  // current level section, empty outside one
  std::vector<std::string> attr_names;
  std::optional<long long> current;

  std::size_t fields = 0;  // fields seen for `current`, the id counting as one
  for (const auto& line : detail::split_lines(text)) {
    auto words = detail::split_ws(line.text);
    if (words.empty()) {
      section.clear();
      current.reset();
      continue;
    }
    if (!section.empty()) {
      for (std::size_t i = 0; i < words.size(); ++i) {
        bool new_entry = detail::is_integer(words[i]) && (i == 0 || fields >= 2);
        if (new_entry) {
          long long id = detail::to_integer(words[i], line.number);
          if (h.elements.count(id)) {
            throw SyntaxError(line.number, 0, "duplicate id " + std::to_string(id));
          }
          h.elements.emplace(id, Element{section, "", {}, line.number});
          h.order[section].push_back(id);
          current = id;
          fields = 1;
          continue;
        }
        if (!current) throw SyntaxError(line.number, 0, "entry without an id");
        Element& e = h.elements.at(*current);
        if (fields == 1) {
          e.label = words[i];
        } else if (fields - 1 <= attr_names.size()) {
          e.attrs.emplace_back(attr_names[fields - 2], std::string(words[i]));
        } else {
          throw SyntaxError(line.number, 0,
                            "too many fields for id " + std::to_string(*current));
        }
        ++fields;
      }
      continue;
    }
    const std::string head(words[0]);
    if (head == "level") {
      if (words.size() < 2) throw SyntaxError(line.number, 0, "level without a name");
      h.levels.emplace_back(words[1]);
    } else if (head == "label") {
      if (words.size() != 3) throw SyntaxError(line.number, 0, "expected 'label LEVEL NAME'");
    } else if (head == "labfile") {
      if (words.size() < 2) throw SyntaxError(line.number, 0, "labfile without a level");
      LabFile lf{std::string(words[1]), "END", "SEGMENT", line.number};
      for (std::size_t i = 2; i < words.size(); ++i) {
        if (words[i].empty() || words[i][0] != ':' || i + 1 == words.size()) {
          throw SyntaxError(line.number, 0, "malformed labfile option");
        }
        std::string key(words[i].substr(1));
        std::string value(words[++i]);
        if (key == "mark") {
          if (value != "END" && value != "START") {
            throw SyntaxError(line.number, 0, "unknown :mark " + value);
          }
          lf.mark = value;
        } else if (key == "type") {
          if (value != "SEGMENT" && value != "EVENT") {
            throw SyntaxError(line.number, 0, "unknown :type " + value);
          }
          lf.type = value;
        } else if (key == "time-factor") {
          if (!detail::is_integer(value) || detail::to_integer(value, line.number) <= 0) {
            throw SyntaxError(line.number, 0, "bad :time-factor " + value);
          }
        }
      }
      h.labfiles.push_back(std::move(lf));
    } else if (all_integers(words)) {
      std::vector<long long> ids;
      for (auto w : words) ids.push_back(detail::to_integer(w, line.number));
      long long parent = ids.front();
      ids.erase(ids.begin());
      h.dominance.emplace_back(parent, std::move(ids));
      h.dominance_lines.push_back(line.number);
    } else {
      if (words.size() < 2 || words[0] != words[1]) {
        throw SyntaxError(line.number, 1, "expected a level section header 'Level Level'");
      }
      section = head;
      if (!h.levels.empty() &&
          std::find(h.levels.begin(), h.levels.end(), section) == h.levels.end()) {
        throw SyntaxError(line.number, 1, "undeclared level " + section);
      }
      attr_names.assign(words.begin() + 2, words.end());
      current.reset();
    }
  }
  return h;
}

struct Mark {
  TimeRef time;
  std::string label;
  std::size_t line;
};

std::vector<Mark> read_label_file(std::string_view text) {
  std::vector<Mark> out;
  bool body = false;
  for (const auto& line : detail::split_lines(text)) {
    auto t = detail::trim(line.text);
    if (!body) {
      body = t == "#";
      continue;
    }
    if (t.empty()) continue;
    auto words = detail::split_ws(t);
    if (words.size() < 3) {
      throw SyntaxError(line.number, 1, "expected 'time color label'");
    }
    std::string label(words[2]);
    for (std::size_t i = 3; i < words.size(); ++i) label += " " + std::string(words[i]);
    out.push_back({detail::to_time(words[0], line.number, 1), label, line.number});
  }
  if (!body) throw SyntaxError(0, 0, "label file without a '#' header terminator");
  return out;
}

}  // namespace

ImportedGraph import_emu(std::string_view hierarchy_text,
                         const std::vector<std::string>& label_texts,
                         const ImportOptions& opts) {
  Hierarchy h = read_hierarchy(hierarchy_text);
  if (label_texts.size() != h.labfiles.size()) {
    throw SyntaxError(0, 0, std::to_string(h.labfiles.size()) + " labfile declarations but " +
                                std::to_string(label_texts.size()) + " label files");
  }

  GraphBuilder b(opts);
  std::map<TimeRef, NodeId> by_time;
  auto node_at = [&](const TimeRef& t) {
    auto it = by_time.find(t);
    if (it != by_time.end()) return it->second;
    NodeId n = b.fresh();
    b.anchor(n, t);
    by_time.emplace(t, n);
    return n;
  };

  // Endpoints of every element that has them, with the timed position used
  // to find extremes.
  struct Span {
    NodeId src;
    NodeId dst;
  };
  std::map<long long, Span> spans;
  std::map<long long, std::pair<std::size_t, std::size_t>> timed_rank;  // (file, index)
  std::set<std::string> timed_levels;

  for (std::size_t f = 0; f < h.labfiles.size(); ++f) {
    const LabFile& lf = h.labfiles[f];
    const auto& ids = h.order[lf.level];
    auto marks = read_label_file(label_texts[f]);
    if (marks.size() != ids.size()) {
      throw AlignmentMismatch(lf.line, 0,
                              lf.level + " has " + std::to_string(ids.size()) +
                                  " elements but the label file has " +
                                  std::to_string(marks.size()));
    }
    timed_levels.insert(lf.level);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Element& e = h.elements.at(ids[i]);
      if (marks[i].label != e.label) {
        throw AlignmentMismatch(marks[i].line, 0,
                                "label '" + marks[i].label + "' where " + lf.level +
                                    " has '" + e.label + "'");
      }
      if (i > 0 && marks[i].time < marks[i - 1].time) {
        throw NonMonotonicSpan(marks[i].line, 1, "label times go backwards");
      }
      auto make = [&]() -> Span {
        if (lf.type == "EVENT") {
          NodeId end = b.fresh();
          b.anchor(end, marks[i].time);
          return {node_at(marks[i].time), end};
        }
        if (lf.mark == "END") {
          return {node_at(i == 0 ? TimeRef() : marks[i - 1].time), node_at(marks[i].time)};
        }
        return {node_at(marks[i].time),
                i + 1 < marks.size() ? node_at(marks[i + 1].time) : b.fresh()};
      };
      Span s = make();
      if (s.src == s.dst) {
        throw NonMonotonicSpan(marks[i].line, 1, "zero-length segment " + e.label);
      }
      spans.emplace(ids[i], s);
      timed_rank.emplace(ids[i], std::pair{f, i});
    }
  }

  std::map<long long, std::set<long long>> dominated;
  for (std::size_t k = 0; k < h.dominance.size(); ++k) {
    const auto& [parent, children] = h.dominance[k];
    for (long long id : children) {
      if (!h.elements.count(id)) {
        throw DanglingDominance(h.dominance_lines[k], 0,
                                "id " + std::to_string(id) + " is not declared");
      }
    }
    if (!h.elements.count(parent)) {
      throw DanglingDominance(h.dominance_lines[k], 1,
                              "id " + std::to_string(parent) + " is not declared");
    }
    dominated[parent].insert(children.begin(), children.end());
  }

  // Timed descendants, following dominance transitively.
  std::map<long long, std::set<long long>> memo;
  std::set<long long> visiting;
  std::function<const std::set<long long>&(long long)> timed_below =
      [&](long long id) -> const std::set<long long>& {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::set<long long> out;
    if (visiting.insert(id).second) {
      for (long long c : dominated[id]) {
        if (timed_rank.count(c)) out.insert(c);
        const auto& below = timed_below(c);
        out.insert(below.begin(), below.end());
      }
      visiting.erase(id);
    }
    return memo[id] = std::move(out);
  };

  for (const auto& [id, e] : h.elements) {
    if (timed_levels.count(e.level)) continue;
    const auto& below = timed_below(id);
    if (below.empty()) {
      spans.emplace(id, Span{b.fresh(), b.fresh()});
      continue;
    }
    auto by_rank = [&](long long a, long long c) { return timed_rank.at(a) < timed_rank.at(c); };
    long long first = *std::min_element(below.begin(), below.end(), by_rank);
    long long last = *std::max_element(below.begin(), below.end(), by_rank);
    if (timed_rank.at(first).first != timed_rank.at(last).first) {
      throw SyntaxError(e.line, 0, "element dominates segments of two label files");
    }
    spans.emplace(id, Span{spans.at(first).src, spans.at(last).dst});
  }

  for (const auto& [id, e] : h.elements) {
    const Span& s = spans.at(id);
    b.arc(s.src, b.type_for(e.level, type_of_level(e.level)), e.label, s.dst);
    for (const auto& [name, value] : e.attrs) {
      b.arc(s.src, b.type_for(name, name), value, s.dst);
    }
  }
  return b.finish();
}

}  // namespace ag
