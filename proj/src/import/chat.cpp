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


#include <map>
#include <regex>

#include "common.hpp"

namespace ag {

using detail::GraphBuilder;

namespace {

struct Utterance {
  std::string speaker;
  std::string text;
  std::size_t line;
  bool timed = false;
  std::string file{};
  long long start_ms = 0;
  long long end_ms = 0;
  std::vector<std::pair<std::string, std::string>> tiers{};
};

struct Token {
  std::string type;
  std::string content;
};

bool is_punct(char c) {
  return c == '.' || c == '?' || c == '!' || c == ',' || c == ';' || c == ':';
}

bool is_pause(std::string_view t) {
  return t == "(.)" || t == "(..)" || t == "(...)";
}

std::vector<Token> tokenize(std::string_view text) {
  auto raw = detail::split_ws(text);
  std::vector<Token> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string tok(raw[i]);
    if (tok.front() == '[') {
      // A bracketed code may contain blanks, as in `[= laughs]`.
      while (tok.find(']') == std::string::npos && i + 1 < raw.size()) {
        tok += " ";
        tok += raw[++i];
      }
      out.push_back({"meta", tok});
      continue;
    }
    if (tok == "#" || tok.front() == '+' || is_pause(tok)) {
      out.push_back({"meta", tok});
      continue;
    }
    std::string_view core(tok);
    while (!core.empty() && core.front() == '<') {
      out.push_back({"meta", "<"});
      core.remove_prefix(1);
    }
    std::vector<Token> after;
    while (!core.empty()) {
      if (core.back() == '>') {
        after.push_back({"meta", ">"});
      } else if (is_punct(core.back())) {
        after.push_back({"punct", std::string(1, core.back())});
      } else {
        break;
      }
      core.remove_suffix(1);
    }
    if (!core.empty()) out.push_back({"W", std::string(core)});
    out.insert(out.end(), after.rbegin(), after.rend());
  }
  return out;
}

}  // namespace

ImportedGraph import_chat(std::string_view text, const ImportOptions& opts) {
  std::vector<std::string> comments;
  std::vector<Utterance> utts;

  // Join continuation lines (leading blank) to the line they continue.
  struct Logical {
    std::string text;
    std::size_t number;
  };
  std::vector<Logical> logical;
  for (const auto& line : detail::split_lines(text)) {
    if (detail::trim(line.text).empty()) continue;
    if (line.text[0] == ' ' || line.text[0] == '\t') {
      if (logical.empty()) {
        throw SyntaxError(line.number, 1, "continuation line with nothing to continue");
      }
      logical.back().text += " ";
      logical.back().text += detail::trim(line.text);
      continue;
    }
    logical.push_back({std::string(detail::trim(line.text)), line.number});
  }

  static const std::regex snd_re(R"re(^"?([^"\s]+)"?\s+(\d+)\s+(\d+)$)re");
  for (const auto& l : logical) {
    char lead = l.text[0];
    if (lead == '@') {
      comments.push_back(l.text);
      continue;
    }
    auto colon = l.text.find(':');
    if ((lead != '*' && lead != '%') || colon == std::string::npos || colon < 2) {
      throw SyntaxError(l.number, 1, "expected a header, utterance or dependent tier");
    }
    std::string name = l.text.substr(1, colon - 1);
    std::string body(detail::trim(std::string_view(l.text).substr(colon + 1)));
    if (lead == '*') {
      if (!NodeId::valid(name) || !Label::valid_type(name)) {
        throw SyntaxError(l.number, 2, "bad speaker code '" + name + "'");
      }
      utts.push_back(Utterance{.speaker = name, .text = body, .line = l.number});
      continue;
    }
    if (utts.empty()) {
      throw OrphanDependentTier(l.number, 1, "%" + name + " tier before any utterance");
    }
    if (!Label::valid_type(name)) {
      throw SyntaxError(l.number, 2, "bad tier name '" + name + "'");
    }
    Utterance& u = utts.back();
    if (name == "snd") {
      std::smatch m;
      if (!std::regex_match(body, m, snd_re)) {
        throw SyntaxError(l.number, 1, "expected '%snd: \"file\" start end'");
      }
      if (u.timed) throw SyntaxError(l.number, 1, "second %snd tier for one utterance");
      u.timed = true;
      u.file = m[1];
      u.start_ms = detail::to_integer(m[2].str(), l.number);
      u.end_ms = detail::to_integer(m[3].str(), l.number);
      if (u.end_ms < u.start_ms) {
        throw NonMonotonicSpan(l.number, 1, "%snd end precedes its start");
      }
    } else {
      u.tiers.emplace_back(name, body);
    }
  }

  GraphBuilder b(opts);
  std::map<long long, NodeId> by_ms;
  auto node_at = [&](long long ms) {
    auto it = by_ms.find(ms);
    if (it != by_ms.end()) return it->second;
    NodeId n = b.fresh();
    b.anchor(n, TimeRef::ratio(ms, 1000));
    by_ms.emplace(ms, n);
    return n;
  };
  const std::string speaker_type = b.type_for("speaker", "speaker");
  const std::string file_type = b.type_for("snd", "file");
  for (const auto& u : utts) {
    NodeId start = u.timed ? node_at(u.start_ms) : b.fresh();
    NodeId end = b.fresh();
    if (u.timed) {
      if (u.end_ms == u.start_ms) {
        b.anchor(end, TimeRef::ratio(u.end_ms, 1000));
      } else {
        end = node_at(u.end_ms);
      }
    }
    auto tokens = tokenize(u.text);
    NodeId from = start;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      NodeId to = i + 1 == tokens.size() ? end : b.fresh();
      b.arc(from, b.type_for(tokens[i].type, tokens[i].type), tokens[i].content, to);
      from = to;
    }
    b.arc(start, speaker_type, u.speaker, end);
    if (u.timed) b.arc(start, file_type, u.file, end);
    for (const auto& [tier, body] : u.tiers) b.arc(start, tier, body, end);
  }
  return b.finish(std::move(comments));
}

}  // namespace ag
