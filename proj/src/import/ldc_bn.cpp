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
#include <map>

#include "common.hpp"
#include "markup.hpp"

namespace ag {

using detail::GraphBuilder;
using detail::MarkupToken;

namespace {

class BnReader {
 public:
  explicit BnReader(const ImportOptions& opts) : b_(opts) {}

  ImportedGraph run(std::string_view text) {
    for (const auto& t : detail::lex_markup(text)) {
      switch (t.kind) {
        case MarkupToken::Kind::Text:
          on_text(t);
          break;
        case MarkupToken::Kind::Open:
          on_open(t);
          break;
        case MarkupToken::Kind::Close:
          on_close(t);
          break;
      }
    }
    if (segment_) throw SyntaxError(segment_line_, 0, "unclosed Segment");
    if (section_) close_section();
    if (!backgrounds_.empty()) {
      // Nothing closes them: end at the last time the file mentions.
      TimeRef last = by_time_.empty() ? TimeRef() : by_time_.rbegin()->first;
      for (auto& [type, open] : backgrounds_) last = std::max(last, open.start);
      for (auto& [type, open] : backgrounds_) end_background(open, last);
      backgrounds_.clear();
    }
    return b_.finish();
  }

 private:
  struct Background {
    std::string type;
    std::string level;
    TimeRef start;
  };
  struct Section {
    std::string type;
    TimeRef start;
    TimeRef end;
  };

  NodeId node_at(const TimeRef& t) {
    auto it = by_time_.find(t);
    if (it != by_time_.end()) return it->second;
    NodeId n = b_.fresh();
    b_.anchor(n, t);
    by_time_.emplace(t, n);
    return n;
  }

  static const std::string& need(const MarkupToken& t, std::string_view key) {
    const std::string* v = t.attr(key);
    if (!v || v->empty()) {
      throw SyntaxError(t.line, t.column,
                        "<" + t.name + "> without " + std::string(key));
    }
    return *v;
  }

  static TimeRef time_of(const MarkupToken& t, std::string_view key) {
    return detail::to_time(need(t, key), t.line, t.column);
  }

  void on_text(const MarkupToken& t) {
    auto words = detail::split_ws(t.text);
    if (words.empty()) return;
    if (!segment_) throw SyntaxError(t.line, t.column, "text outside a Segment");
    for (auto w : words) pending_.emplace_back(w);
  }

  void on_open(const MarkupToken& t) {
    if (t.name == "Episode") return;
    if (t.name == "Background") {
      open_background(t);
    } else if (t.name == "Section") {
      if (section_) close_section();
      section_ = Section{need(t, "Type"), time_of(t, "S_time"), time_of(t, "E_time")};
      if (section_->end < section_->start) {
        throw NonMonotonicSync(t.line, t.column, "Section ends before it starts");
      }
    } else if (t.name == "Segment") {
      if (segment_) throw SyntaxError(t.line, t.column, "nested Segment");
      TimeRef s = time_of(t, "S_time");
      TimeRef e = time_of(t, "E_time");
      if (e <= s) throw NonMonotonicSync(t.line, t.column, "Segment ends before it starts");
      segment_ = true;
      segment_line_ = t.line;
      seg_start_ = s;
      seg_end_ = e;
      boundary_ = s;
      NodeId a = node_at(s);
      NodeId z = node_at(e);
      for (auto [key, type] : {std::pair{"Speaker", "speaker"},
                               std::pair{"Fidelity", "fidelity"},
                               std::pair{"Mode", "mode"}}) {
        if (const std::string* v = t.attr(key)) b_.arc(a, b_.type_for(type, type), *v, z);
      }
    } else if (t.name == "Sync") {
      if (!segment_) throw SyntaxError(t.line, t.column, "Sync outside a Segment");
      TimeRef at = time_of(t, "Time");
      if (at < boundary_ || at > seg_end_ || (at == boundary_ && !pending_.empty())) {
        throw NonMonotonicSync(t.line, t.column,
                               "Sync " + at.str() + " after " + boundary_.str());
      }
      flush(at, t.line);
    } else {
      throw SyntaxError(t.line, t.column, "unknown tag <" + t.name + ">");
    }
  }

  void on_close(const MarkupToken& t) {
    if (t.name == "Episode") return;
    if (t.name == "Segment") {
      if (!segment_) throw SyntaxError(t.line, t.column, "</Segment> without <Segment>");
      if (boundary_ == seg_end_ && !pending_.empty()) {
        throw NonMonotonicSync(t.line, t.column, "words after a Sync at the segment end");
      }
      flush(seg_end_, t.line);
      segment_ = false;
    } else if (t.name == "Section") {
      if (!section_) throw SyntaxError(t.line, t.column, "</Section> without <Section>");
      if (segment_) throw SyntaxError(t.line, t.column, "</Section> inside a Segment");
      close_section();
    } else {
      throw SyntaxError(t.line, t.column, "unknown tag </" + t.name + ">");
    }
  }

  // Chains the words seen since the last boundary up to time `to`.
  void flush(const TimeRef& to, std::size_t line) {
    (void)line;
    NodeId from = node_at(boundary_);
    NodeId end = node_at(to);
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      NodeId next = i + 1 == pending_.size() ? end : b_.fresh();
      const std::string& w = pending_[i];
      if (w.size() > 2 && w.front() == '{' && w.back() == '}') {
        b_.arc(from, b_.type_for("noise", "noise"), w.substr(1, w.size() - 2), next);
      } else {
        b_.arc(from, b_.type_for("W", "W"), w, next);
      }
      from = next;
    }
    pending_.clear();
    boundary_ = to;
  }

  void open_background(const MarkupToken& t) {
    std::string type = need(t, "Type");
    std::string level = detail::to_lower(need(t, "Level"));
    TimeRef at = time_of(t, "Time");
    auto it = backgrounds_.find(type);
    if (it != backgrounds_.end()) {
      if (at < it->second.start) {
        throw NonMonotonicSync(t.line, t.column, "Background " + at.str() +
                                                     " before " + it->second.start.str());
      }
      end_background(it->second, at);
      backgrounds_.erase(it);
    }
    if (level != "off") backgrounds_.emplace(type, Background{type, level, at});
  }

  void end_background(const Background& bg, const TimeRef& at) {
    if (at == bg.start) return;
    std::string type = bg.type == "Music" ? "M" : detail::to_lower(bg.type);
    b_.arc(node_at(bg.start), b_.type_for(type, type), bg.level, node_at(at));
  }

  void close_section() {
    const Section& s = *section_;
    for (auto& [type, open] : backgrounds_) {
      if (open.start < s.end) end_background(open, s.end);
    }
    std::erase_if(backgrounds_, [&](const auto& kv) { return kv.second.start < s.end; });
    if (s.start < s.end) {
      b_.arc(node_at(s.start), b_.type_for("section", "section"), s.type, node_at(s.end));
    }
    section_.reset();
  }

  GraphBuilder b_;
  std::map<TimeRef, NodeId> by_time_;
  std::map<std::string, Background> backgrounds_;
  std::optional<Section> section_;
  bool segment_ = false;
  std::size_t segment_line_ = 0;
  TimeRef seg_start_;
  TimeRef seg_end_;
  TimeRef boundary_;
  std::vector<std::string> pending_;
};

}  // namespace

ImportedGraph import_ldc_bn(std::string_view text, const ImportOptions& opts) {
  return BnReader(opts).run(text);
}

}  // namespace ag
