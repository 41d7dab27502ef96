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

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace ag {

// Node identifier. Only string identity matters; no structure is read
// into the characters. Must be non-empty and free of whitespace, '/',
// '<' and '>'.
class NodeId {
 public:
  explicit NodeId(std::string id);
  const std::string& str() const { return id_; }
  static bool valid(std::string_view id);

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;

 private:
  std::string id_;
};

// A `type/content` pair. The type is non-empty and has no '/' or
// whitespace; the content is arbitrary (and may be empty).
class Label {
 public:
  Label(std::string type, std::string content);

  // Splits at the first '/'.
  static Label parse(std::string_view text);
  static bool valid_type(std::string_view type);

  const std::string& type() const { return type_; }
  const std::string& content() const { return content_; }
  // Unescaped `type/content`.
  std::string str() const { return type_ + "/" + content_; }

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::string type_;
  std::string content_;
};

struct Arc {
  NodeId src;
  Label label;
  NodeId dst;

  friend auto operator<=>(const Arc&, const Arc&) = default;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Human-readable `(src, type/content, dst)`; used in messages.
std::string describe(const Arc& arc);

}  // namespace ag
