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


#include "ag/query.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <regex>

#include "ag/algebra.hpp"
#include "ag/encoding.hpp"
#include "ag/equivalence.hpp"
#include "ag/errors.hpp"

namespace ag {

using ArcIndex = AnnotationGraph::ArcIndex;

struct Predicate::Node {
  Kind kind = Kind::All;
  std::string text;
  std::string id;
  std::optional<ArcRef> ref;
  std::shared_ptr<const std::regex> pattern;
  InclusionMode imode = InclusionMode::Either;
  PrecedenceMode pmode = PrecedenceMode::General;
  bool after = false;
  std::optional<Predicate> left;
  std::optional<Predicate> right;
};

namespace {

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
         c == '&' || c == '|' || c == '!' || c == '=' || c == '~' || c == '"' || c == '*';
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string word_or_quote(const std::string& s) {
  bool plain = !s.empty() && std::none_of(s.begin(), s.end(), is_delimiter);
  return plain ? s : quote(s);
}

std::string regex_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::string_view("\\^$.|?*+()[]{}/").find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

std::string_view to_string(PrecedenceMode m) {
  switch (m) {
    case PrecedenceMode::Structural:
      return "s";
    case PrecedenceMode::Temporal:
      return "t";
    case PrecedenceMode::General:
      return "general";
  }
  return "general";
}

}  // namespace

std::string ArcRef::str() const {
  if (arc) {
    return "<" + arc->src.str() + "/> " + arc->label.type() + "/" +
           escape_content(arc->label.content()) + " <" + arc->dst.str() + "/>";
  }
  return label->str();
}

Predicate Predicate::all() { return Predicate(std::make_shared<Node>()); }

Predicate Predicate::label_type(std::string type) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::LabelType;
  n->text = std::move(type);
  return Predicate(n);
}

Predicate Predicate::label_content(std::string pattern) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::LabelContent;
  try {
    n->pattern = std::make_shared<const std::regex>(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw BadPattern("bad regular expression '" + pattern + "': " + e.what());
  }
  n->text = std::move(pattern);
  return Predicate(n);
}

Predicate Predicate::overlaps(ArcRef ref) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Overlaps;
  n->ref = std::move(ref);
  return Predicate(n);
}

Predicate Predicate::includes(ArcRef ref, InclusionMode mode) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Includes;
  n->ref = std::move(ref);
  n->imode = mode;
  return Predicate(n);
}

Predicate Predicate::precedes(ArcRef ref, PrecedenceMode mode, bool after) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Precedes;
  n->ref = std::move(ref);
  n->pmode = mode;
  n->after = after;
  return Predicate(n);
}

Predicate Predicate::in_class(std::string type, std::string id) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::InClass;
  n->text = std::move(type);
  n->id = std::move(id);
  return Predicate(n);
}

Predicate Predicate::both(Predicate p, Predicate q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->left = std::move(p);
  n->right = std::move(q);
  return Predicate(n);
}

Predicate Predicate::either(Predicate p, Predicate q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->left = std::move(p);
  n->right = std::move(q);
  return Predicate(n);
}

Predicate Predicate::negate(Predicate p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->left = std::move(p);
  return Predicate(n);
}

Predicate::Kind Predicate::kind() const { return node_->kind; }
const std::string& Predicate::text() const { return node_->text; }
const std::string& Predicate::class_id() const { return node_->id; }
const ArcRef& Predicate::ref() const { return *node_->ref; }
InclusionMode Predicate::inclusion_mode() const { return node_->imode; }
PrecedenceMode Predicate::precedence_mode() const { return node_->pmode; }
bool Predicate::after() const { return node_->after; }
const Predicate& Predicate::left() const { return *node_->left; }
const Predicate& Predicate::right() const { return *node_->right; }

bool Predicate::test_content(const std::string& content) const {
  return std::regex_search(content, *node_->pattern);
}

std::string Predicate::str() const {
  switch (kind()) {
    case Kind::All:
      return "*";
    case Kind::LabelType:
      return "type=" + word_or_quote(text());
    case Kind::LabelContent:
      return "content~" + quote(text());
    case Kind::Overlaps:
      return "overlaps(" + quote(ref().str()) + ")";
    case Kind::Includes:
      return "within(" + quote(ref().str()) + ", " + std::string(to_string(inclusion_mode())) +
             ")";
    case Kind::Precedes:
      return std::string(after() ? "after(" : "before(") + quote(ref().str()) + ", " +
             std::string(to_string(precedence_mode())) + ")";
    case Kind::InClass:
      return "class(" + word_or_quote(text()) + ", " + word_or_quote(class_id()) + ")";
    case Kind::And:
      return "(" + left().str() + " & " + right().str() + ")";
    case Kind::Or:
      return "(" + left().str() + " | " + right().str() + ")";
    case Kind::Not:
      return "!" + left().str();
  }
  return "*";
}

// --- parsing ---

namespace {

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : text_(text) {}

  Predicate run() {
    Predicate p = expr();
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw BadPattern("column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip();
    std::size_t b = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    if (b == pos_) fail("expected a word");
    return std::string(text_.substr(b, pos_ - b));
  }

  std::string string() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted string");
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string word_or_string() {
    skip();
    return pos_ < text_.size() && text_[pos_] == '"' ? string() : word();
  }

  ArcRef ref() {
    std::size_t at = pos_;
    std::string s = string();
    try {
      if (!s.empty() && s[0] == '<') {
        TupleLine l = parse_line(s);
        return ArcRef::of(Arc{l.src_id, l.label, l.dst_id});
      }
      return ArcRef::of(Label::parse(s));
    } catch (const Error& e) {
      pos_ = at;
      fail(std::string("bad arc reference: ") + e.what());
    }
  }

  Predicate expr() {
    Predicate p = conjunction();
    while (accept('|')) p = Predicate::either(p, conjunction());
    return p;
  }

  Predicate conjunction() {
    Predicate p = unary();
    while (accept('&')) p = Predicate::both(p, unary());
    return p;
  }

  Predicate unary() {
    if (accept('!')) return Predicate::negate(unary());
    if (accept('(')) {
      Predicate p = expr();
      expect(')');
      return p;
    }
    if (accept('*')) return Predicate::all();
    skip();
    std::size_t start = pos_;
    std::string name = word();
    if (name == "type") {
      expect('=');
      return Predicate::label_type(word_or_string());
    }
    if (name == "content") {
      skip();
      if (accept('~')) return Predicate::label_content(string());
      expect('=');
      return Predicate::label_content("^" + regex_escape(string()) + "$");
    }
    if (name == "class") {
      expect('(');
      std::string type = word_or_string();
      expect(',');
      std::string id = word_or_string();
      expect(')');
      return Predicate::in_class(type, id);
    }
    if (name == "overlaps" || name == "within" || name == "before" || name == "after") {
      expect('(');
      ArcRef r = ref();
      std::optional<std::string> mode;
      if (accept(',')) mode = word();
      expect(')');
      if (name == "overlaps") {
        if (mode) fail("overlaps takes no mode");
        return Predicate::overlaps(r);
      }
      if (name == "within") {
        auto m = mode ? parse_inclusion_mode(*mode) : InclusionMode::Either;
        if (!m) fail("unknown inclusion mode '" + *mode + "'");
        return Predicate::includes(r, *m);
      }
      PrecedenceMode m = PrecedenceMode::General;
      if (mode == "s") {
        m = PrecedenceMode::Structural;
      } else if (mode == "t") {
        m = PrecedenceMode::Temporal;
      } else if (mode && *mode != "general") {
        fail("unknown precedence mode '" + *mode + "'");
      }
      return Predicate::precedes(r, m, name == "after");
    }
    pos_ = start;
    fail("unknown predicate '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Predicate parse_query(std::string_view text) { return QueryParser(text).run(); }

// --- evaluation ---

namespace {

struct Span {
  TimeRef lo;
  TimeRef hi;
  bool point;  // lo == hi
  bool empty;  // a point at the last time, in no interval
};

// Shared by both evaluators: everything that does not depend on an index.
class Context {
 public:
  explicit Context(const AnnotationGraph& g) : g_(g) {}

  const AnnotationGraph& graph() const { return g_; }

  std::vector<ArcIndex> refs(const ArcRef& r) {
    std::vector<ArcIndex> out;
    if (r.arc) {
      if (auto i = g_.find(*r.arc)) out.push_back(*i);
      return out;
    }
    for (ArcIndex a = 0; a < g_.arc_count(); ++a) {
      if (r.matches(g_.arcs()[a])) out.push_back(a);
    }
    return out;
  }

  const std::vector<Span>& spans() {
    if (!spans_) {
      auto raw = index_spans(g_);
      std::optional<TimeRef> last;
      for (const auto& [n, t] : g_.anchors()) {
        if (!last || *last < t) last = t;
      }
      spans_.emplace();
      for (const auto& iv : raw) {
        bool point = iv.lo == iv.hi;
        spans_->push_back({iv.lo, iv.hi, point, point && iv.lo == *last});
      }
    }
    return *spans_;
  }

  bool overlap(ArcIndex x, ArcIndex r) {
    const Span& a = spans()[x];
    const Span& b = spans()[r];
    if (a.empty || b.empty) return false;
    if (a.point && b.point) return a.lo == b.lo;
    if (a.point) return b.lo <= a.lo && a.lo < b.hi;
    if (b.point) return a.lo <= b.lo && b.lo < a.hi;
    return a.lo < b.hi && b.lo < a.hi;
  }

  // Non-strict: a shared node, or for the time-based modes a shared time,
  // also counts as "at or before".
  bool ordered(const NodeId& first, const NodeId& second, PrecedenceMode m) const {
    if (first == second) return true;
    if (m != PrecedenceMode::Structural) {
      const TimeRef* a = g_.time(first);
      const TimeRef* b = g_.time(second);
      if (a && b && *a == *b) return true;
    }
    switch (m) {
      case PrecedenceMode::Structural:
        return s_precedes(g_, first, second);
      case PrecedenceMode::Temporal:
        return t_precedes(g_, first, second);
      case PrecedenceMode::General:
        return precedes(g_, first, second);
    }
    return false;
  }

  bool precedes_test(ArcIndex x, ArcIndex r, const Predicate& p) const {
    const Arc& a = g_.arcs()[x];
    const Arc& b = g_.arcs()[r];
    return p.after() ? ordered(b.dst, a.src, p.precedence_mode())
                     : ordered(a.dst, b.src, p.precedence_mode());
  }

  std::vector<ArcIndex> linked(const std::string& type, const std::string& id) {
    auto& m = classes_[type];
    if (!m) m = resolve_equivalence_classes(g_, {type});
    std::vector<ArcIndex> out;
    for (const auto& a : m->linked(g_, {type, id})) out.push_back(g_.index_of(a));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const AnnotationGraph& g_;
  std::optional<std::vector<Span>> spans_;
  std::map<std::string, std::optional<EquivalenceClassMap>> classes_;
};

bool contains(const std::vector<ArcIndex>& sorted, ArcIndex a) {
  return std::binary_search(sorted.begin(), sorted.end(), a);
}

// Arcs x != every ref with test(x, r) true for some ref r.
template <typename Test>
std::vector<ArcIndex> scan_related(const AnnotationGraph& g, const std::vector<ArcIndex>& refs,
                                   Test test) {
  std::vector<ArcIndex> out;
  for (ArcIndex x = 0; x < g.arc_count(); ++x) {
    if (contains(refs, x)) continue;
    if (std::any_of(refs.begin(), refs.end(), [&](ArcIndex r) { return test(x, r); })) {
      out.push_back(x);
    }
  }
  return out;
}

bool uses_overlap(const Predicate& p) {
  switch (p.kind()) {
    case Predicate::Kind::Overlaps:
      return true;
    case Predicate::Kind::And:
    case Predicate::Kind::Or:
      return uses_overlap(p.left()) || uses_overlap(p.right());
    case Predicate::Kind::Not:
      return uses_overlap(p.left());
    default:
      return false;
  }
}

class NaiveEvaluator {
 public:
  explicit NaiveEvaluator(const AnnotationGraph& g) : ctx_(g) {}

  std::vector<ArcIndex> run(const Predicate& p) {
    const AnnotationGraph& g = ctx_.graph();
    switch (p.kind()) {
      case Predicate::Kind::Overlaps: {
        auto refs = ctx_.refs(p.ref());
        return scan_related(g, refs, [&](ArcIndex x, ArcIndex r) { return ctx_.overlap(x, r); });
      }
      case Predicate::Kind::Includes: {
        auto refs = ctx_.refs(p.ref());
        return scan_related(g, refs, [&](ArcIndex x, ArcIndex r) {
          return ag::includes(g, g.arcs()[r], g.arcs()[x], p.inclusion_mode());
        });
      }
      case Predicate::Kind::Precedes: {
        auto refs = ctx_.refs(p.ref());
        return scan_related(g, refs,
                            [&](ArcIndex x, ArcIndex r) { return ctx_.precedes_test(x, r, p); });
      }
      case Predicate::Kind::InClass:
        return ctx_.linked(p.text(), p.class_id());
      default:
        break;
    }
    std::vector<ArcIndex> out;
    for (ArcIndex a = 0; a < g.arc_count(); ++a) {
      if (test(p, a)) out.push_back(a);
    }
    return out;
  }

 private:
  bool test(const Predicate& p, ArcIndex a) {
    const Arc& arc = ctx_.graph().arcs()[a];
    switch (p.kind()) {
      case Predicate::Kind::All:
        return true;
      case Predicate::Kind::LabelType:
        return arc.label.type() == p.text();
      case Predicate::Kind::LabelContent:
        return p.test_content(arc.label.content());
      case Predicate::Kind::And:
        return test(p.left(), a) && test(p.right(), a);
      case Predicate::Kind::Or:
        return test(p.left(), a) || test(p.right(), a);
      case Predicate::Kind::Not:
        return !test(p.left(), a);
      default:
        return contains(relation(p), a);
    }
  }

  // Relational predicates are computed once as a set, then looked up.
  const std::vector<ArcIndex>& relation(const Predicate& p) {
    auto key = &p.ref();
    if (p.kind() == Predicate::Kind::InClass) key = nullptr;
    auto it = cache_.find({&p, key});
    if (it == cache_.end()) it = cache_.emplace(std::pair{&p, key}, run(p)).first;
    return it->second;
  }

  Context ctx_;
  std::map<std::pair<const Predicate*, const ArcRef*>, std::vector<ArcIndex>> cache_;
};

std::vector<ArcIndex> merge_union(const std::vector<ArcIndex>& a, const std::vector<ArcIndex>& b) {
  std::vector<ArcIndex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class IndexedEvaluator {
 public:
  explicit IndexedEvaluator(const QueryIndex& idx) : idx_(idx), ctx_(idx.graph()) {}

  std::vector<ArcIndex> run(const Predicate& p) {
    const AnnotationGraph& g = idx_.graph();
    switch (p.kind()) {
      case Predicate::Kind::All: {
        std::vector<ArcIndex> out(g.arc_count());
        std::iota(out.begin(), out.end(), 0);
        return out;
      }
      case Predicate::Kind::LabelType: {
        if (!idx_.type()) return NaiveEvaluator(g).run(p);
        auto s = idx_.type()->arcs_of_type(p.text());
        std::vector<ArcIndex> out(s.begin(), s.end());
        std::sort(out.begin(), out.end());
        return out;
      }
      case Predicate::Kind::LabelContent: {
        std::vector<ArcIndex> out;
        for (ArcIndex a = 0; a < g.arc_count(); ++a) {
          if (p.test_content(g.arcs()[a].label.content())) out.push_back(a);
        }
        return out;
      }
      case Predicate::Kind::And: {
        auto left = run(p.left());
        if (left.empty()) return left;
        auto right = run(p.right());
        std::vector<ArcIndex> out;
        std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                              std::back_inserter(out));
        return out;
      }
      case Predicate::Kind::Or:
        return merge_union(run(p.left()), run(p.right()));
      case Predicate::Kind::Not: {
        auto inner = run(p.left());
        std::vector<ArcIndex> out;
        for (ArcIndex a = 0; a < g.arc_count(); ++a) {
          if (!contains(inner, a)) out.push_back(a);
        }
        return out;
      }
      case Predicate::Kind::Overlaps:
        return overlaps(p);
      case Predicate::Kind::Includes:
        return included(p);
      case Predicate::Kind::Precedes: {
        auto refs = ctx_.refs(p.ref());
        return scan_related(g, refs,
                            [&](ArcIndex x, ArcIndex r) { return ctx_.precedes_test(x, r, p); });
      }
      case Predicate::Kind::InClass:
        return ctx_.linked(p.text(), p.class_id());
    }
    return {};
  }

 private:
  const TimeLocalIndex& time_index() const {
    if (!idx_.time()) throw NotAnchored("overlap needs every component anchored");
    return *idx_.time();
  }

  std::vector<ArcIndex> overlaps(const Predicate& p) {
    const TimeLocalIndex& t = time_index();
    auto refs = ctx_.refs(p.ref());
    std::vector<ArcIndex> out;
    for (ArcIndex r : refs) {
      auto [first, last] = t.intervals_of(r);
      for (std::size_t i = first; i < last; ++i) {
        out.insert(out.end(), t.postings()[i].begin(), t.postings()[i].end());
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::erase_if(out, [&](ArcIndex a) { return contains(refs, a); });
    return out;
  }

  std::vector<ArcIndex> included(const Predicate& p) {
    const AnnotationGraph& g = idx_.graph();
    auto refs = ctx_.refs(p.ref());
    auto test = [&](ArcIndex x, ArcIndex r) {
      return ag::includes(g, g.arcs()[r], g.arcs()[x], p.inclusion_mode());
    };
    if (!idx_.time()) return scan_related(g, refs, test);
    std::vector<ArcIndex> out;
    for (ArcIndex r : refs) {
      for (ArcIndex x : idx_.time()->candidates_within(r)) {
        if (!contains(refs, x) && test(x, r)) out.push_back(x);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const QueryIndex& idx_;
  Context ctx_;
};

}  // namespace

QueryIndex QueryIndex::build(const AnnotationGraph& g) {
  QueryIndex q;
  q.graph_ = g;
  try {
    q.time_ = TimeLocalIndex::build(g);
    q.type_ = TypeLocalIndex::build(g);
  } catch (const NotAnchored&) {
    q.time_.reset();
    q.type_.reset();
  }
  return q;
}

// Overlap anywhere in a predicate needs every component anchored, whether or
// not evaluation reaches it.
std::vector<ArcIndex> evaluate(const AnnotationGraph& g, const Predicate& p) {
  if (uses_overlap(p)) index_spans(g);
  return NaiveEvaluator(g).run(p);
}

std::vector<ArcIndex> evaluate(const QueryIndex& idx, const Predicate& p) {
  if (uses_overlap(p) && !idx.time()) index_spans(idx.graph());
  return IndexedEvaluator(idx).run(p);
}

AnnotationGraph select(const AnnotationGraph& g, const Predicate& p) {
  auto arcs = evaluate(g, p);
  return subgraph(g, arcs);
}

AnnotationGraph select(const QueryIndex& idx, const Predicate& p) {
  auto arcs = evaluate(idx, p);
  return subgraph(idx.graph(), arcs);
}

AnnotationGraph combine(const AnnotationGraph& q1, const AnnotationGraph& q2, Combinator op) {
  switch (op) {
    case Combinator::Union:
      return unite(q1, q2);
    case Combinator::Intersection:
      return intersect(q1, q2);
    case Combinator::Difference:
      return relative_complement(q1, q2);
  }
  return q1;
}

std::set<Arc> find_spanning(const AnnotationGraph& g, const TimeLocalIndex& idx,
                            const TimeRef& t) {
  std::set<Arc> out;
  auto i = idx.interval_containing(t);
  if (!i) return out;
  for (ArcIndex a : idx.postings()[*i]) {
    const Interval& s = idx.span(a);
    if (s.lo == s.hi ? s.lo == t : (s.lo <= t && t < s.hi)) out.insert(g.arcs()[a]);
  }
  return out;
}

}  // namespace ag
