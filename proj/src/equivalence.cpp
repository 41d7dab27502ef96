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


#include "ag/equivalence.hpp"

namespace ag {

const std::set<Arc>& EquivalenceClassMap::members(const Key& key) const {
  static const std::set<Arc> kEmpty;
  auto it = classes_.find(key);
  return it == classes_.end() ? kEmpty : it->second;
}

std::set<Arc> EquivalenceClassMap::linked(const AnnotationGraph& g,
                                          const Key& key) const {
  const auto& mem = members(key);
  std::set<std::pair<NodeId, NodeId>> spans;
  for (const auto& a : mem) spans.emplace(a.src, a.dst);
  std::set<Arc> out = mem;
  for (const auto& a : g.arcs()) {
    if (spans.count({a.src, a.dst})) out.insert(a);
  }
  return out;
}

std::vector<EquivalenceClassMap::Key> EquivalenceClassMap::classes_of(
    const AnnotationGraph& /*g*/, const Arc& arc) const {
  std::vector<Key> out;
  for (const auto& [key, mem] : classes_) {
    for (const auto& m : mem) {
      if (m.src == arc.src && m.dst == arc.dst) {
        out.push_back(key);
        break;
      }
    }
  }
  return out;
}

EquivalenceClassMap resolve_equivalence_classes(
    const AnnotationGraph& g, const std::set<std::string>& class_types) {
  EquivalenceClassMap map;
  for (const auto& a : g.arcs()) {
    if (class_types.count(a.label.type())) {
      map.classes_[{a.label.type(), a.label.content()}].insert(a);
    }
  }
  return map;
}

}  // namespace ag
