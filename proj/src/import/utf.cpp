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
#include <cctype>
#include <regex>

#include "common.hpp"
#include "markup.hpp"

namespace ag {

using detail::GraphBuilder;
using detail::MarkupToken;

namespace {

struct Token {
  std::string type;
  std::string surface;
  std::vector<std::string> lexical;  // from a contraction's e_form
};

struct BoundaryTime {
  std::size_t boundary;
  TimeRef time;
  std::size_t line;
  std::size_t column;
};

struct Entity {
  std::string type;
  std::size_t from;
  std::size_t to;
};

struct Turn {
  std::string speaker;
  std::string spkrtype;
  std::size_t line = 0;
  std::vector<Token> tokens{};
  std::vector<BoundaryTime> times{};
  std::vector<Entity> entities{};
};

bool is_container(std::string_view name) {
  return name == "utf" || name == "bn_episode_trans" || name == "conversation_trans" ||
         name == "section" || name == "episode";
}

class UtfReader {
 public:
  explicit UtfReader(const ImportOptions& opts) : b_(opts) {}

  ImportedGraph run(std::string_view text) {
    for (const auto& t : detail::lex_markup(text, {.decode_entities = true})) {
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
    if (turn_) throw UnbalancedTag(turn_->line, 0, "unclosed <turn>");
    return b_.finish();
  }

 private:
  static const std::string& need(const MarkupToken& t, std::string_view key) {
    const std::string* v = t.attr(key);
    if (!v || v->empty()) {
      throw SyntaxError(t.line, t.column, "<" + t.name + "> without " + std::string(key));
    }
    return *v;
  }

  static TimeRef time_of(const MarkupToken& t, std::string_view key) {
    return detail::to_time(need(t, key), t.line, t.column);
  }

  std::size_t here() const { return turn_->tokens.size(); }

  void at_boundary(const TimeRef& time, const MarkupToken& t) {
    turn_->times.push_back(BoundaryTime{here(), time, t.line, t.column});
  }

  void on_text(const MarkupToken& t) {
    auto words = detail::split_ws(t.text);
    if (words.empty()) {
      join_next_ = false;
      return;
    }
    if (!turn_) throw SyntaxError(t.line, t.column, "text outside a turn");
    bool leading_space = !t.text.empty() && std::isspace(static_cast<unsigned char>(t.text[0]));
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::string w(words[i]);
      if (i == 0 && join_next_ && !leading_space && !turn_->tokens.empty() &&
          turn_->tokens.back().type == "W") {
        turn_->tokens.back().surface += "-" + w;
        continue;
      }
      if (i == 0 && contraction_) {
        std::string joined;
        for (const auto& [surface, full] : *contraction_) joined += surface;
        if (joined != w) {
          throw SyntaxError(t.line, t.column,
                            "contraction e_form does not spell '" + w + "'");
        }
        Token tok{"W", w, {}};
        for (const auto& pair : *contraction_) tok.lexical.push_back(pair.second);
        turn_->tokens.push_back(std::move(tok));
        contraction_.reset();
        continue;
      }
      if (w == "...") {
        turn_->tokens.push_back({"elided", "", {}});
      } else if (w.front() == '{') {
        std::string noise = w.substr(1);
        if (!noise.empty() && noise.back() == '}') noise.pop_back();
        turn_->tokens.push_back({"noise", noise, {}});
      } else {
        turn_->tokens.push_back({"W", w, {}});
      }
    }
    if (contraction_) throw SyntaxError(t.line, t.column, "contraction without a word");
    join_next_ = false;
  }

  void on_open(const MarkupToken& t) {
    if (contraction_) throw SyntaxError(t.line, t.column, "contraction without a word");
    if (is_container(t.name)) return;
    if (t.name == "turn") {
      if (turn_) throw UnbalancedTag(t.line, t.column, "<turn> inside a turn");
      turn_ = Turn{.speaker = need(t, "speaker"), .spkrtype = need(t, "spkrtype"), .line = t.line};
      start_ = time_of(t, "startTime");
      end_ = time_of(t, "endTime");
      if (end_ < start_) throw NonMonotonicSpan(t.line, t.column, "turn ends before it starts");
      return;
    }
    if (!turn_) throw SyntaxError(t.line, t.column, "<" + t.name + "> outside a turn");
    if (t.name == "time") {
      at_boundary(time_of(t, "sec"), t);
    } else if (t.name == "b_overlap") {
      if (overlap_end_) throw UnbalancedTag(t.line, t.column, "nested <b_overlap>");
      at_boundary(time_of(t, "startTime"), t);
      overlap_end_ = time_of(t, "endTime");
    } else if (t.name == "e_overlap") {
      if (!overlap_end_) throw UnbalancedTag(t.line, t.column, "<e_overlap> without <b_overlap>");
      at_boundary(*overlap_end_, t);
      overlap_end_.reset();
    } else if (t.name == "b_enamex") {
      open_entities_.push_back({need(t, "type"), here(), 0});
    } else if (t.name == "e_enamex") {
      if (open_entities_.empty()) {
        throw UnbalancedTag(t.line, t.column, "<e_enamex> without <b_enamex>");
      }
      Entity e = open_entities_.back();
      open_entities_.pop_back();
      e.to = here();
      if (e.to == e.from) throw SyntaxError(t.line, t.column, "empty named entity");
      turn_->entities.push_back(e);
    } else if (t.name == "contraction") {
      contraction_ = parse_e_form(need(t, "e_form"), t);
    } else if (t.name == "hyphen") {
      join_next_ = true;
    } else {
      throw SyntaxError(t.line, t.column, "unknown tag <" + t.name + ">");
    }
  }

  void on_close(const MarkupToken& t) {
    if (is_container(t.name)) return;
    if (t.name != "turn") throw SyntaxError(t.line, t.column, "unexpected </" + t.name + ">");
    if (!turn_) throw UnbalancedTag(t.line, t.column, "</turn> without <turn>");
    if (overlap_end_) throw UnbalancedTag(t.line, t.column, "<b_overlap> not closed in turn");
    if (!open_entities_.empty()) {
      throw UnbalancedTag(t.line, t.column, "<b_enamex> not closed in turn");
    }
    if (contraction_) throw SyntaxError(t.line, t.column, "contraction without a word");
    build_turn();
    turn_.reset();
    join_next_ = false;
  }

  static std::vector<std::pair<std::string, std::string>> parse_e_form(
      const std::string& form, const MarkupToken& t) {
    static const std::regex part(R"(\[([^\]=]*)=>([^\]]*)\])");
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t consumed = 0;
    for (auto it = std::sregex_iterator(form.begin(), form.end(), part);
         it != std::sregex_iterator(); ++it) {
      if (static_cast<std::size_t>(it->position()) != consumed) break;
      out.emplace_back((*it)[1], (*it)[2]);
      consumed += it->length();
    }
    if (out.empty() || consumed != form.size()) {
      throw SyntaxError(t.line, t.column, "malformed e_form '" + form + "'");
    }
    return out;
  }

  void build_turn() {
    const Turn& turn = *turn_;
    std::size_t n = turn.tokens.size();
    std::vector<NodeId> nodes;
    for (std::size_t i = 0; i <= std::max<std::size_t>(n, 1); ++i) nodes.push_back(b_.fresh());
    b_.anchor(nodes.front(), start_, turn.line);
    b_.anchor(nodes.back(), end_, turn.line);
    for (const auto& bt : turn.times) {
      std::size_t k = n == 0 ? (bt.boundary == 0 ? 0 : 1) : bt.boundary;
      b_.anchor(nodes[k], bt.time, bt.line, bt.column);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Token& tok = turn.tokens[i];
      b_.arc(nodes[i], b_.type_for(tok.type, tok.type), tok.surface, nodes[i + 1]);
      NodeId from = nodes[i];
      for (std::size_t k = 0; k < tok.lexical.size(); ++k) {
        NodeId to = k + 1 == tok.lexical.size() ? nodes[i + 1] : b_.fresh();
        b_.arc(from, b_.type_for("L", "L"), tok.lexical[k], to);
        from = to;
      }
    }
    for (const auto& e : turn.entities) {
      b_.arc(nodes[e.from], b_.type_for("NE", "NE"), e.type, nodes[e.to]);
    }
    b_.arc(nodes.front(), b_.type_for("speaker", "speaker"), turn.speaker, nodes.back());
    b_.arc(nodes.front(), b_.type_for("spkrtype", "spkrtype"), turn.spkrtype, nodes.back());
  }

  GraphBuilder b_;
  std::optional<Turn> turn_;
  TimeRef start_;
  TimeRef end_;
  std::optional<TimeRef> overlap_end_;
  std::vector<Entity> open_entities_;
  std::optional<std::vector<std::pair<std::string, std::string>>> contraction_;
  bool join_next_ = false;
};

}  // namespace

ImportedGraph import_utf(std::string_view text, const ImportOptions& opts) {
  return UtfReader(opts).run(text);
}

}  // namespace ag
