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


#include "markup.hpp"

#include <cctype>
#include <map>

#include "ag/errors.hpp"

namespace ag::detail {
namespace {

const std::map<std::string_view, unsigned long>& named_entities() {
  static const std::map<std::string_view, unsigned long> table = {
      {"amp", '&'},       {"lt", '<'},        {"gt", '>'},
      {"quot", '"'},      {"apos", '\''},     {"nbsp", 0xA0},
      {"iexcl", 0xA1},    {"cent", 0xA2},     {"pound", 0xA3},
      {"curren", 0xA4},   {"yen", 0xA5},      {"brvbar", 0xA6},
      {"sect", 0xA7},     {"uml", 0xA8},      {"copy", 0xA9},
      {"ordf", 0xAA},     {"laquo", 0xAB},    {"not", 0xAC},
      {"shy", 0xAD},      {"reg", 0xAE},      {"macr", 0xAF},
      {"deg", 0xB0},      {"plusmn", 0xB1},   {"sup2", 0xB2},
      {"sup3", 0xB3},     {"acute", 0xB4},    {"micro", 0xB5},
      {"para", 0xB6},     {"middot", 0xB7},   {"cedil", 0xB8},
      {"sup1", 0xB9},     {"ordm", 0xBA},     {"raquo", 0xBB},
      {"frac14", 0xBC},   {"frac12", 0xBD},   {"frac34", 0xBE},
      {"iquest", 0xBF},   {"Agrave", 0xC0},   {"Aacute", 0xC1},
      {"Acirc", 0xC2},    {"Atilde", 0xC3},   {"Auml", 0xC4},
      {"Aring", 0xC5},    {"AElig", 0xC6},    {"Ccedil", 0xC7},
      {"Egrave", 0xC8},   {"Eacute", 0xC9},   {"Ecirc", 0xCA},
      {"Euml", 0xCB},     {"Igrave", 0xCC},   {"Iacute", 0xCD},
      {"Icirc", 0xCE},    {"Iuml", 0xCF},     {"ETH", 0xD0},
      {"Ntilde", 0xD1},   {"Ograve", 0xD2},   {"Oacute", 0xD3},
      {"Ocirc", 0xD4},    {"Otilde", 0xD5},   {"Ouml", 0xD6},
      {"times", 0xD7},    {"Oslash", 0xD8},   {"Ugrave", 0xD9},
      {"Uacute", 0xDA},   {"Ucirc", 0xDB},    {"Uuml", 0xDC},
      {"Yacute", 0xDD},   {"THORN", 0xDE},    {"szlig", 0xDF},
      {"agrave", 0xE0},   {"aacute", 0xE1},   {"acirc", 0xE2},
      {"atilde", 0xE3},   {"auml", 0xE4},     {"aring", 0xE5},
      {"aelig", 0xE6},    {"ccedil", 0xE7},   {"egrave", 0xE8},
      {"eacute", 0xE9},   {"ecirc", 0xEA},    {"euml", 0xEB},
      {"igrave", 0xEC},   {"iacute", 0xED},   {"icirc", 0xEE},
      {"iuml", 0xEF},     {"eth", 0xF0},      {"ntilde", 0xF1},
      {"ograve", 0xF2},   {"oacute", 0xF3},   {"ocirc", 0xF4},
      {"otilde", 0xF5},   {"ouml", 0xF6},     {"divide", 0xF7},
      {"oslash", 0xF8},   {"ugrave", 0xF9},   {"uacute", 0xFA},
      {"ucirc", 0xFB},    {"uuml", 0xFC},     {"yacute", 0xFD},
      {"thorn", 0xFE},    {"yuml", 0xFF},
  };
  return table;
}

class Lexer {
 public:
  Lexer(std::string_view text, const MarkupOptions& opts)
      : text_(text), opts_(opts) {}

  std::vector<MarkupToken> run() {
    std::vector<MarkupToken> out;
    while (pos_ < text_.size()) {
      if (text_[pos_] == '<') {
        if (auto tok = tag()) out.push_back(std::move(*tok));
      } else {
        out.push_back(text_run());
      }
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(line_, column_, what);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_until(std::string_view end) {
    auto found = text_.find(end, pos_);
    if (found == std::string_view::npos) fail("unterminated markup declaration");
    while (pos_ < found + end.size()) advance();
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(peek()))) {
      advance();
    }
  }

  std::string name() {
    std::string out;
    while (pos_ < text_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == '>' || c == '/' ||
          c == '=' || c == '<' || c == '"' || c == '\'') {
        break;
      }
      out += c;
      advance();
    }
    return out;
  }

  std::optional<MarkupToken> tag() {
    MarkupToken tok;
    tok.line = line_;
    tok.column = column_;
    if (text_.substr(pos_, 4) == "<!--") {
      skip_until("-->");
      return std::nullopt;
    }
    if (text_.substr(pos_, 2) == "<?") {
      skip_until("?>");
      return std::nullopt;
    }
    if (text_.substr(pos_, 2) == "<!") {
      skip_until(">");
      return std::nullopt;
    }
    advance();  // '<'
    tok.kind = MarkupToken::Kind::Open;
    if (peek() == '/') {
      tok.kind = MarkupToken::Kind::Close;
      advance();
    }
    tok.name = name();
    if (tok.name.empty()) fail("expected a tag name after '<'");
    while (true) {
      skip_space();
      char c = peek();
      if (c == '\0') fail("unterminated tag <" + tok.name);
      if (c == '>') {
        advance();
        break;
      }
      if (c == '/') {
        advance();
        if (peek() != '>') fail("expected '>' after '/' in <" + tok.name);
        advance();
        tok.self_closing = true;
        break;
      }
      std::string key = name();
      if (key.empty()) fail(std::string("unexpected '") + c + "' in <" + tok.name);
      skip_space();
      std::string value;
      if (peek() == '=') {
        advance();
        skip_space();
        char q = peek();
        if (q == '"' || q == '\'') {
          advance();
          while (pos_ < text_.size() && peek() != q) {
            value += peek();
            advance();
          }
          if (peek() != q) fail("unterminated attribute value in <" + tok.name);
          advance();
        } else {
          while (pos_ < text_.size() &&
                 !std::isspace(static_cast<unsigned char>(peek())) &&
                 peek() != '>') {
            value += peek();
            advance();
          }
        }
      }
      if (opts_.decode_entities) value = decode(value);
      tok.attrs.emplace_back(std::move(key), std::move(value));
    }
    if (tok.kind == MarkupToken::Kind::Close && (tok.self_closing || !tok.attrs.empty())) {
      fail("malformed closing tag </" + tok.name + ">");
    }
    return tok;
  }

  MarkupToken text_run() {
    MarkupToken tok;
    tok.line = line_;
    tok.column = column_;
    std::string raw;
    while (pos_ < text_.size() && peek() != '<') {
      raw += peek();
      advance();
    }
    tok.text = opts_.decode_entities ? decode(raw) : raw;
    return tok;
  }

  std::string decode(const std::string& raw) const {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto c = static_cast<unsigned char>(raw[i]);
      if (c != '&') {
        if (c >= 0x80 && opts_.latin1) {
          append_utf8(out, c);
        } else {
          out += raw[i];
        }
        continue;
      }
      auto semi = raw.find(';', i);
      if (semi == std::string::npos) fail("unterminated entity");
      std::string_view ent(raw.data() + i + 1, semi - i - 1);
      unsigned long cp = 0;
      if (!ent.empty() && ent[0] == '#') {
        bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
        auto digits = ent.substr(hex ? 2 : 1);
        if (digits.empty()) fail("empty character reference");
        for (char d : digits) {
          int v = std::isdigit(static_cast<unsigned char>(d))
                      ? d - '0'
                      : (hex && std::isxdigit(static_cast<unsigned char>(d))
                             ? std::tolower(static_cast<unsigned char>(d)) - 'a' + 10
                             : -1);
          if (v < 0) fail("bad character reference &" + std::string(ent) + ";");
          cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
          if (cp > 0x10FFFF) fail("character reference out of range");
        }
      } else {
        auto it = named_entities().find(ent);
        if (it == named_entities().end()) {
          fail("unknown entity &" + std::string(ent) + ";");
        }
        cp = it->second;
      }
      append_utf8(out, cp);
      i = semi;
    }
    return out;
  }

  std::string_view text_;
  MarkupOptions opts_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

const std::string* MarkupToken::attr(std::string_view key) const {
  for (const auto& [k, v] : attrs) {
    if (k == key) return &v;
  }
  return nullptr;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::vector<MarkupToken> lex_markup(std::string_view text,
                                    const MarkupOptions& opts) {
  return Lexer(text, opts).run();
}

}  // namespace ag::detail
