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

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ag {

// A strict partial order on label types, supplied from outside the graph
// (the tuple format has no place for it). Pairs are closed under
// transitivity at construction.
class TypeOrder {
 public:
  TypeOrder() = default;

  // Throws InvalidTypeOrder if the pairs are reflexive or cyclic.
  explicit TypeOrder(const std::vector<std::pair<std::string, std::string>>&
                         higher_lower_pairs);

  // Lines of the form `HIGH > LOW`; blank lines and `#` comments skipped.
  // Throws SyntaxError for malformed lines, InvalidTypeOrder for cycles.
  static TypeOrder parse(std::string_view text);

  bool higher(const std::string& a, const std::string& b) const;
  bool empty() const { return below_.empty(); }
  // The declared (not closed) pairs.
  const std::vector<std::pair<std::string, std::string>>& pairs() const {
    return pairs_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, std::set<std::string>> below_;
};

}  // namespace ag
