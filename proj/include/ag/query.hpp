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


// Predicates over arcs and the subgraphs they select.
//
// Textual form, loosest binding first:
//
//   expr    := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | '(' expr ')' | atom
//   atom    := '*' | 'type' '=' WORD | 'content' '~' STRING
//            | 'content' '=' STRING | 'overlaps' '(' REF ')'
//            | 'within' '(' REF [',' MODE] ')' | 'before' '(' REF [',' MODE] ')'
//            | 'after' '(' REF [',' MODE] ')' | 'class' '(' WORD ',' WORD ')'
//
// A REF is a quoted label ("W/country") or a quoted tuple line
// ("<13/> W/country <14/>", times ignored) and stands for every matching
// arc. Patterns are ECMAScript regular expressions searched anywhere in the
// content; anchor them with ^ and $ for a whole-content match.

#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ag/graph.hpp"
#include "ag/index.hpp"
#include "ag/relations.hpp"

namespace ag {

struct ArcRef {
  std::optional<Label> label;
  std::optional<Arc> arc;

  static ArcRef of(Label l) { return {std::move(l), std::nullopt}; }
  static ArcRef of(Arc a) { return {std::nullopt, std::move(a)}; }
  bool matches(const Arc& a) const { return arc ? *arc == a : *label == a.label; }
  std::string str() const;
};

enum class PrecedenceMode { Structural, Temporal, General };

class Predicate {
 public:
  enum class Kind {
    All,
    LabelType,
    LabelContent,
    Overlaps,
    Includes,
    Precedes,
    InClass,
    And,
    Or,
    Not
  };

  static Predicate all();
  static Predicate label_type(std::string type);
  // Throws BadPattern.
  static Predicate label_content(std::string pattern);
  // Arcs posted to a common interval of the time-local index with some
  // referenced arc. The referenced arcs themselves never match this or the
  // two relations below.
  static Predicate overlaps(ArcRef ref);
  // Arcs included in some referenced arc.
  static Predicate includes(ArcRef ref, InclusionMode mode = InclusionMode::Either);
  // Arcs ending at or before the start of some referenced arc (or, with
  // `after`, starting at or after its end). "At" means the same node, or in
  // the t and general modes the same time.
  static Predicate precedes(ArcRef ref, PrecedenceMode mode = PrecedenceMode::General,
                            bool after = false);
  // Arcs linked to the equivalence class (type, id).
  static Predicate in_class(std::string type, std::string id);
  static Predicate both(Predicate p, Predicate q);
  static Predicate either(Predicate p, Predicate q);
  static Predicate negate(Predicate p);

  Kind kind() const;
  const std::string& text() const;     // type, pattern or class type
  const std::string& class_id() const;
  const ArcRef& ref() const;
  InclusionMode inclusion_mode() const;
  PrecedenceMode precedence_mode() const;
  bool after() const;
  const Predicate& left() const;   // And, Or, Not
  const Predicate& right() const;  // And, Or
  bool test_content(const std::string& content) const;

  // Parses back to an equal predicate.
  std::string str() const;

 private:
  struct Node;
  explicit Predicate(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Throws BadPattern with the 1-based column of the problem.
Predicate parse_query(std::string_view text);

// An immutable graph with the indexes the evaluator can use. Both indexes
// are absent when some component of the graph has no anchor.
class QueryIndex {
 public:
  static QueryIndex build(const AnnotationGraph& g);

  const AnnotationGraph& graph() const { return graph_; }
  const TimeLocalIndex* time() const { return time_ ? &*time_ : nullptr; }
  const TypeLocalIndex* type() const { return type_ ? &*type_ : nullptr; }

 private:
  AnnotationGraph graph_;
  std::optional<TimeLocalIndex> time_;
  std::optional<TypeLocalIndex> type_;
};

// Indexes of the satisfying arcs, ascending. The first form scans every
// arc; the second uses the indexes for candidate generation.
std::vector<AnnotationGraph::ArcIndex> evaluate(const AnnotationGraph& g, const Predicate& p);
std::vector<AnnotationGraph::ArcIndex> evaluate(const QueryIndex& idx, const Predicate& p);

// The satisfying arcs with anchors restricted to their endpoints.
AnnotationGraph select(const AnnotationGraph& g, const Predicate& p);
AnnotationGraph select(const QueryIndex& idx, const Predicate& p);

enum class Combinator { Union, Intersection, Difference };

AnnotationGraph combine(const AnnotationGraph& q1, const AnnotationGraph& q2, Combinator op);

// Arcs whose span [glb, lub) holds t, plus instants at exactly t. Empty
// outside the indexed range.
std::set<Arc> find_spanning(const AnnotationGraph& g, const TimeLocalIndex& idx,
                            const TimeRef& t);

}  // namespace ag
