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
#include <utility>
#include <vector>

#include "ag/graph.hpp"

namespace ag {

// Arcs linked through a class-typed label: arcs labeled `license/w35`
// are members of class (license, w35), and any arc spanning the same node
// pair as a member is linked to the class by span.
class EquivalenceClassMap {
 public:
  using Key = std::pair<std::string, std::string>;  // (class type, id)

  const std::map<Key, std::set<Arc>>& classes() const { return classes_; }
  bool empty() const { return classes_.empty(); }
  std::size_t size() const { return classes_.size(); }

  // Member arcs of one class; empty if the key is unknown.
  const std::set<Arc>& members(const Key& key) const;

  // Members plus every non-member arc of g sharing a member's node pair.
  std::set<Arc> linked(const AnnotationGraph& g, const Key& key) const;

  // Classes whose members share a span with `arc` (arc itself may be a
  // member).
  std::vector<Key> classes_of(const AnnotationGraph& g, const Arc& arc) const;

 private:
  friend EquivalenceClassMap resolve_equivalence_classes(
      const AnnotationGraph&, const std::set<std::string>&);
  std::map<Key, std::set<Arc>> classes_;
};

EquivalenceClassMap resolve_equivalence_classes(
    const AnnotationGraph& g, const std::set<std::string>& class_types);

}  // namespace ag
