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


// A small lexer for the SGML-like markup of LACITO, LDC and UTF files.
// It does not check nesting; callers do.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ag::detail {

struct MarkupToken {
  enum class Kind { Text, Open, Close };
  Kind kind = Kind::Text;
  std::string name;  // tag name; empty for text
  std::vector<std::pair<std::string, std::string>> attrs;
  bool self_closing = false;
  std::string text;  // text content, entities decoded if requested
  std::size_t line = 0;
  std::size_t column = 0;

  const std::string* attr(std::string_view key) const;
};

struct MarkupOptions {
  // Decode &#N; &#xN; and the named entities of HTML Latin-1; an unknown
  // entity is an error. Text is otherwise passed through untouched.
  bool decode_entities = false;
  // Re-encode bytes >= 0x80 from Latin-1 to UTF-8.
  bool latin1 = false;
};

// Skips <?...?>, <!...> and comments. Throws SyntaxError on a malformed
// tag or entity.
std::vector<MarkupToken> lex_markup(std::string_view text,
                                    const MarkupOptions& opts = {});

void append_utf8(std::string& out, unsigned long code_point);

}  // namespace ag::detail
