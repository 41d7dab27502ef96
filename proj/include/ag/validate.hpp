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


// Structural, content and hierarchy checks. Checks report findings; they
// never throw for a malformed graph and never repair one.

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ag/encoding.hpp"
#include "ag/graph.hpp"
#include "ag/relations.hpp"
#include "ag/type_order.hpp"

namespace ag {

enum class Severity { Error, Warning };

std::string_view to_string(Severity s);

// What a finding is about: a node or an arc. Nodes order before arcs.
struct Locus {
  std::optional<NodeId> node;
  std::optional<Arc> arc;

  static Locus of(const NodeId& n) { return {n, std::nullopt}; }
  static Locus of(const Arc& a) { return {std::nullopt, a}; }

  // `<id/>` for a node, the arc in tuple form (times omitted) for an arc.
  std::string str() const;

  friend std::weak_ordering operator<=>(const Locus& a, const Locus& b) {
    if (a.arc.has_value() != b.arc.has_value()) {
      return a.arc.has_value() ? std::weak_ordering::greater : std::weak_ordering::less;
    }
    if (auto c = a.node <=> b.node; c != 0) return c;
    return a.arc <=> b.arc;
  }
  friend bool operator==(const Locus&, const Locus&) = default;
};

struct Finding {
  Severity severity = Severity::Error;
  std::string code;
  Locus locus;
  std::string message;
};

class ValidationReport {
 public:
  ValidationReport() = default;
  explicit ValidationReport(std::vector<Finding> findings);

  // Sorted by locus, then code, then message.
  const std::vector<Finding>& findings() const { return findings_; }
  bool empty() const { return findings_.empty(); }
  std::size_t errors() const;
  std::size_t warnings() const;

  void add(Finding f);
  void add(const ValidationReport& other);
  // Raises the listed codes to error severity.
  void promote(const std::set<std::string>& codes);

  // One `SEVERITY CODE LOCUS MESSAGE` line per finding.
  std::string text() const;
  std::string json() const;

 private:
  void sort();
  std::vector<Finding> findings_;
};

struct StructureOptions {
  // Anchoring shortfalls below this class are errors.
  AnchorClass required = AnchorClass::Anchored;
};

// Codes: cycle, order-violation, dangling-source, dangling-sink,
// unanchored-node (errors); zero-length (warning) for an arc that is not
// an instant but whose glb equals its lub. Cycle and order-violation
// findings occur exactly when AnnotationGraph::build would throw.
ValidationReport validate_structure(const GraphParts& parts,
                                    const StructureOptions& opts = {});
ValidationReport validate_structure(const AnnotationGraph& g,
                                    const StructureOptions& opts = {});
// As above, plus anchor-conflict for a node written with two times.
ValidationReport validate_lines(std::span<const TupleLine> lines,
                                const StructureOptions& opts = {});

using Vocabulary = std::map<std::string, std::set<std::string>>;

// `TYPE: item item ...` lines; blank and '#' lines skipped. Items are
// whitespace-separated and percent-escaped as in the tuple format.
Vocabulary parse_vocabulary(std::string_view text);

// content-not-permitted for each arc whose type is listed but whose
// content is not.
ValidationReport validate_content(const AnnotationGraph& g, const Vocabulary& vocab,
                                  Severity severity = Severity::Warning);

using ContainmentRules = std::set<std::pair<std::string, std::string>>;

// `OUTER contains INNER` lines; blank and '#' lines skipped.
ContainmentRules parse_containment(std::string_view text);

struct HierarchyOptions {
  // Either: s- or t-inclusion suffices. Structural or Temporal for one.
  InclusionMode mode = InclusionMode::Either;
  Severity severity = Severity::Warning;
};

// uncovered for each inner-typed arc included in no outer-typed arc.
// Throws InvalidTypeOrder when `order` ranks a rule's inner type above its
// outer type.
ValidationReport validate_hierarchy(const AnnotationGraph& g, const TypeOrder& order,
                                    const ContainmentRules& rules,
                                    const HierarchyOptions& opts = {});

}  // namespace ag
