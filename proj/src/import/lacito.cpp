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
#include <regex>

#include "common.hpp"
#include "markup.hpp"

namespace ag {

using detail::GraphBuilder;
using detail::MarkupToken;

namespace {

struct Sentence {
  std::size_t line = 0;
  std::vector<std::string> words{};
  std::vector<std::string> glosses{};
  std::optional<TimeRef> start{};
  std::optional<TimeRef> end{};
  std::optional<std::string> translation{};
};

std::string collapse(std::string_view s) {
  std::string out;
  for (auto part : detail::split_ws(s)) {
    if (!out.empty()) out += ' ';
    out += part;
  }
  return out;
}

bool declares_latin1(std::string_view text) {
  static const std::regex decl(R"(^\s*<\?[Xx][Mm][Ll][^>]*encoding\s*=\s*["']?(ISO-8859-1|iso-8859-1|latin-?1|LATIN-?1))");
  std::string head(text.substr(0, std::min<std::size_t>(text.size(), 200)));
  return std::regex_search(head, decl);
}

}  // namespace

ImportedGraph import_lacito(std::string_view text, const ImportOptions& opts) {
  std::vector<MarkupToken> tokens;
  try {
    tokens = detail::lex_markup(
        text, {.decode_entities = true, .latin1 = declares_latin1(text)});
  } catch (const XmlError&) {
    throw;
  } catch (const SyntaxError& e) {
    throw XmlError(e.line(), e.column(), e.what());
  }

  std::vector<std::string> stack;
  std::vector<Sentence> sentences;
  std::string buffer;
  auto inside = [&](std::string_view name) {
    return std::find(stack.begin(), stack.end(), name) != stack.end();
  };
  auto time_attr = [&](const MarkupToken& t, std::string_view key) {
    const std::string* v = t.attr(key);
    if (!v) throw XmlError(t.line, t.column, "AUDIO without " + std::string(key));
    try {
      return TimeRef::parse(*v);
    } catch (const InvalidValue&) {
      throw XmlError(t.line, t.column, "bad time '" + *v + "'");
    }
  };

  for (const auto& t : tokens) {
    switch (t.kind) {
      case MarkupToken::Kind::Text:
        buffer += t.text;
        break;
      case MarkupToken::Kind::Open:
        if (t.name == "S") {
          if (inside("S")) throw XmlError(t.line, t.column, "nested S");
          sentences.push_back(Sentence{.line = t.line});
        } else if (t.name == "AUDIO" && inside("S")) {
          Sentence& s = sentences.back();
          s.start = time_attr(t, "start");
          s.end = time_attr(t, "end");
          if (*s.end < *s.start) {
            throw XmlError(t.line, t.column, "AUDIO end precedes start");
          }
        }
        buffer.clear();
        if (!t.self_closing) stack.push_back(t.name);
        break;
      case MarkupToken::Kind::Close: {
        if (stack.empty() || stack.back() != t.name) {
          throw XmlError(t.line, t.column,
                         "unexpected </" + t.name + ">" +
                             (stack.empty() ? "" : ", open <" + stack.back() + ">"));
        }
        stack.pop_back();
        if (!inside("S")) {
          buffer.clear();
          break;
        }
        Sentence& s = sentences.back();
        if (t.name == "W" && inside("TRANSCR")) {
          s.words.push_back(collapse(buffer));
        } else if (t.name == "W" && inside("MOTAMOT")) {
          s.glosses.push_back(collapse(buffer));
        } else if (t.name == "TRADUC") {
          s.translation = collapse(buffer);
        }
        buffer.clear();
        break;
      }
    }
  }
  if (!stack.empty()) {
    throw XmlError(0, 0, "unclosed <" + stack.back() + ">");
  }

  GraphBuilder b(opts);
  const std::string w_type = b.type_for("TRANSCR", "W");
  const std::string m_type = b.type_for("MOTAMOT", "M");
  const std::string t_type = b.type_for("TRADUC", "T");
  for (const auto& s : sentences) {
    if (!s.glosses.empty() && s.glosses.size() != s.words.size()) {
      throw AlignmentMismatch(s.line, 0,
                              std::to_string(s.words.size()) + " words but " +
                                  std::to_string(s.glosses.size()) + " glosses");
    }
    std::vector<NodeId> nodes;
    nodes.push_back(b.fresh());
    for (std::size_t i = 0; i < std::max<std::size_t>(s.words.size(), 1); ++i) {
      nodes.push_back(b.fresh());
    }
    if (s.start) b.anchor(nodes.front(), *s.start, s.line);
    if (s.end) b.anchor(nodes.back(), *s.end, s.line);
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      b.arc(nodes[i], w_type, s.words[i], nodes[i + 1]);
      if (!s.glosses.empty()) b.arc(nodes[i], m_type, s.glosses[i], nodes[i + 1]);
    }
    if (s.translation) b.arc(nodes.front(), t_type, *s.translation, nodes.back());
  }
  return b.finish();
}

}  // namespace ag
