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


// Shared plumbing for the importers.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ag/errors.hpp"
#include "ag/import.hpp"

namespace ag::detail {

// Accumulates arcs over sequentially numbered nodes.
class GraphBuilder {
 public:
  explicit GraphBuilder(const ImportOptions& opts) : opts_(opts) {}

  NodeId fresh();
  // Throws SyntaxError at (line, column) on a second, different time.
  void anchor(const NodeId& n, const TimeRef& t, std::size_t line = 0,
              std::size_t column = 0);
  const TimeRef* time(const NodeId& n) const;
  void arc(const NodeId& src, const std::string& type, std::string content,
           const NodeId& dst);

  // Label type for a source tier, honoring opts.type_prefix_map.
  std::string type_for(const std::string& tier, const std::string& fallback) const;

  const ImportOptions& options() const { return opts_; }

  // Builds the graph; CycleError and OrderViolation from the core are
  // reported as SyntaxError at `line`.
  ImportedGraph finish(std::vector<std::string> comments = {},
                       std::size_t line = 0);

 private:
  const ImportOptions& opts_;
  std::size_t next_ = 0;
  GraphParts parts_;
};

struct SourceLine {
  std::string_view text;
  std::size_t number;  // 1-based
};

// Splits on LF, dropping a trailing CR from each line.
std::vector<SourceLine> split_lines(std::string_view text);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);

bool is_integer(std::string_view s);
long long to_integer(std::string_view s, std::size_t line, std::size_t column = 0);
// Decimal seconds; throws SyntaxError at the given position.
TimeRef to_time(std::string_view s, std::size_t line, std::size_t column = 0);

std::string to_lower(std::string_view s);

}  // namespace ag::detail
