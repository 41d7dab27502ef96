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

#include "ag/types.hpp"

#include <utility>

#include "ag/errors.hpp"

namespace ag {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

bool NodeId::valid(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (is_space(c) || c == '/' || c == '<' || c == '>') return false;
  }
  return true;
}

NodeId::NodeId(std::string id) : id_(std::move(id)) {
  if (!valid(id_)) throw InvalidValue("invalid node id: '" + id_ + "'");
}

bool Label::valid_type(std::string_view type) {
  if (type.empty()) return false;
  for (char c : type) {
    if (is_space(c) || c == '/') return false;
  }
  return true;
}

Label::Label(std::string type, std::string content)
    : type_(std::move(type)), content_(std::move(content)) {
  if (!valid_type(type_)) {
    throw InvalidValue("invalid label type: '" + type_ + "'");
  }
}

Label Label::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw InvalidValue("label without '/': '" + std::string(text) + "'");
  }
  return Label(std::string(text.substr(0, slash)),
               std::string(text.substr(slash + 1)));
}

std::string describe(const Arc& arc) {
  return "(" + arc.src.str() + ", " + arc.label.str() + ", " + arc.dst.str() +
         ")";
}

}  // namespace ag
