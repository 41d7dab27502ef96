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

#include "ag/errors.hpp"

#include <utility>

namespace ag {
namespace {

std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string out = "cycle through nodes";
  for (const auto& n : cycle) out += " " + n;
  return out;
}

std::string position(std::size_t line, std::size_t column,
                     const std::string& what) {
  if (line == 0) return what;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + what;
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : Error(join_cycle(cycle)), cycle_(std::move(cycle)) {}

OrderViolation::OrderViolation(std::string arc, const std::string& detail)
    : Error("order violation at " + arc + ": " + detail), arc_(std::move(arc)) {}

AnchorConflict::AnchorConflict(std::string node, std::string first,
                               std::string second)
    : Error("node " + node + " anchored at both " + first + " and " + second),
      node_(std::move(node)) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column,
                         const std::string& what)
    : Error(position(line, column, what)), line_(line), column_(column) {}

}  // namespace ag
