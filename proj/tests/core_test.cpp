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


#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ag/algebra.hpp"
#include "ag/encoding.hpp"
#include "ag/equivalence.hpp"
#include "ag/relations.hpp"
#include "ag/type_order.hpp"
#include "support.hpp"

namespace {

using ag::AnchorClass;
using ag::AnnotationGraph;
using ag::Arc;
using ag::Label;
using ag::NodeId;
using ag::TimeRef;

Arc arc(const std::string& s, const std::string& label, const std::string& d) {
  return Arc{NodeId(s), Label::parse(label), NodeId(d)};
}

std::map<NodeId, TimeRef> times(
    std::initializer_list<std::pair<const char*, const char*>> list) {
  std::map<NodeId, TimeRef> out;
  for (auto [id, t] : list) out.emplace(NodeId(id), TimeRef::parse(t));
  return out;
}

AnnotationGraph utf() { return ag::parse(agtest::read_fixture("utf_tuples.ag")); }

TEST(TimeRef, EqualityIsByValue) {
  EXPECT_EQ(TimeRef::parse("2.5"), TimeRef::parse("2.50"));
  EXPECT_EQ(TimeRef::parse("2.50").str(), "2.50");
  EXPECT_EQ(TimeRef::parse("2.50").canonical(), "2.5");
  EXPECT_LT(TimeRef::parse("2391.29"), TimeRef::parse("2391.6"));
  EXPECT_EQ(TimeRef::parse("1/4").canonical(), "0.25");
  EXPECT_EQ(TimeRef::parse("1/3").canonical(), "1/3");
  EXPECT_EQ(TimeRef::ratio(5200, 16000).canonical(), "0.325");
  EXPECT_EQ(TimeRef::ratio(2360, 16000).canonical(), "0.1475");
  EXPECT_EQ(TimeRef::parse("007").canonical(), "7");
  EXPECT_EQ(TimeRef::parse("0.000").canonical(), "0");
}

TEST(TimeRef, RejectsMalformed) {
  for (const char* bad : {"", "-1", "1.", ".5", "1e3", "1/0", "a", "1.2.3"}) {
    EXPECT_THROW(TimeRef::parse(bad), ag::InvalidValue) << bad;
  }
}

TEST(Types, LabelSplitsAtFirstSlash) {
  Label l = Label::parse("file/a/b.wav");
  EXPECT_EQ(l.type(), "file");
  EXPECT_EQ(l.content(), "a/b.wav");
  EXPECT_EQ(Label::parse("elided/").content(), "");
  EXPECT_THROW(Label::parse("/x"), ag::InvalidValue);
  EXPECT_THROW(Label::parse("nolabel"), ag::InvalidValue);
  EXPECT_THROW(NodeId("a b"), ag::InvalidValue);
  EXPECT_THROW(NodeId("a/b"), ag::InvalidValue);
  EXPECT_THROW(NodeId(""), ag::InvalidValue);
}

TEST(Build, EmptyGraph) {
  AnnotationGraph g = AnnotationGraph::build(ag::GraphParts{});
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(ag::classify_anchoring(g), AnchorClass::TotallyAnchored);
}

TEST(Build, SingleTimitArc) {
  auto g = AnnotationGraph::build({arc("1", "W/she", "2")},
                                  times({{"1", "0.1475"}, {"2", "0.325"}}));
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.arc_count(), 1u);
}

TEST(Build, TwoCycleNamesTheCycle) {
  try {
    AnnotationGraph::build({arc("1", "X/a", "2"), arc("2", "X/b", "1")});
    FAIL() << "no CycleError";
  } catch (const ag::CycleError& e) {
    ASSERT_EQ(e.cycle().size(), 3u);
    EXPECT_EQ(e.cycle().front(), e.cycle().back());
  }
}

TEST(Build, SameTimeCycleStillRejected) {
  EXPECT_THROW(AnnotationGraph::build({arc("1", "X/a", "2"), arc("2", "X/b", "1")},
                                      times({{"1", "3"}, {"2", "3"}})),
               ag::CycleError);
}

TEST(Build, InstantsAllowed) {
  auto g = AnnotationGraph::build({arc("1", "X/a", "2")},
                                  times({{"1", "3"}, {"2", "3.0"}}));
  EXPECT_EQ(g.arc_count(), 1u);
}

TEST(Build, OrderViolationOnArc) {
  try {
    AnnotationGraph::build({arc("1", "W/a", "2")}, times({{"1", "0.5"}, {"2", "0.2"}}));
    FAIL() << "no OrderViolation";
  } catch (const ag::OrderViolation& e) {
    EXPECT_EQ(e.arc(), "<1/0.5> W/a <2/0.2>");
  }
}

TEST(Build, OrderViolationAlongChain) {
  EXPECT_THROW(AnnotationGraph::build({arc("1", "W/a", "2"), arc("2", "W/b", "3")},
                                      times({{"1", "5"}, {"3", "4"}})),
               ag::OrderViolation);
}

TEST(Classify, Examples) {
  auto chain = AnnotationGraph::build({arc("1", "A/x", "2"), arc("2", "A/y", "3")},
                                      times({{"1", "0"}}));
  EXPECT_EQ(ag::classify_anchoring(chain), AnchorClass::General);
  auto anchored = AnnotationGraph::build(
      {arc("1", "A/x", "2"), arc("2", "A/y", "3")}, times({{"1", "0"}, {"3", "1"}}));
  EXPECT_EQ(ag::classify_anchoring(anchored), AnchorClass::Anchored);
}

TEST(Classify, NineTupleBlockHasDanglingEnds) {
  // 12 is an unanchored source and 24 an unanchored sink.
  auto g = utf();
  EXPECT_EQ(g.node_count(), 9u);
  EXPECT_EQ(g.anchors().size(), 6u);
  std::set<ag::TimeRef> distinct;
  for (const auto& [id, t] : g.anchors()) distinct.insert(t);
  EXPECT_EQ(distinct.size(), 5u);
  EXPECT_EQ(ag::classify_anchoring(g), AnchorClass::General);
  auto elided = ag::parse(agtest::read_fixture("utf_tuples_elided.ag"));
  EXPECT_EQ(ag::classify_anchoring(elided), AnchorClass::Anchored);
}

TEST(Relations, Precedence) {
  auto chain = AnnotationGraph::build({arc("1", "A/x", "2"), arc("2", "A/y", "3")},
                                      times({{"9", "1"}}));
  EXPECT_TRUE(ag::s_precedes(chain, NodeId("1"), NodeId("3")));
  EXPECT_FALSE(ag::s_precedes(chain, NodeId("1"), NodeId("9")));
  EXPECT_FALSE(ag::s_precedes(chain, NodeId("1"), NodeId("1")));
  EXPECT_THROW(ag::s_precedes(chain, NodeId("1"), NodeId("77")), ag::UnknownNode);

  auto g = utf();
  EXPECT_TRUE(ag::s_precedes(g, NodeId("22"), NodeId("24")));
  EXPECT_TRUE(ag::t_precedes(g, NodeId("11"), NodeId("23")));
  EXPECT_FALSE(ag::t_precedes(g, NodeId("11"), NodeId("22")));
  EXPECT_FALSE(ag::t_precedes(g, NodeId("14"), NodeId("23")));

  auto mixed = AnnotationGraph::build({arc("a", "A/x", "b")},
                                      times({{"a", "1"}, {"c", "0.5"}}));
  EXPECT_TRUE(ag::precedes(mixed, NodeId("c"), NodeId("b")));
  EXPECT_FALSE(ag::precedes(mixed, NodeId("b"), NodeId("c")));
  EXPECT_TRUE(ag::precedes(mixed, NodeId("a"), NodeId("b")));
}

TEST(Relations, Inclusion) {
  auto g = utf();
  Arc roger = arc("11", "speaker/Roger-Hedgecock", "14");
  Arc country = arc("13", "W/country", "14");
  EXPECT_TRUE(ag::s_includes(g, country, country));
  EXPECT_FALSE(ag::s_includes(g, roger, country));
  EXPECT_TRUE(ag::t_includes(g, roger, country));
  EXPECT_TRUE(ag::includes(g, roger, country));
  // With the elided chain, 11 reaches 13 structurally.
  auto elided = ag::parse(agtest::read_fixture("utf_tuples_elided.ag"));
  EXPECT_TRUE(ag::s_includes(elided, roger, country));
  EXPECT_THROW(ag::s_includes(g, roger, arc("1", "A/b", "2")), ag::UnknownArc);
}

TEST(Relations, GlbLub) {
  auto g = utf();
  auto country = arc("13", "W/country", "14");
  EXPECT_EQ(ag::glb(g, country)->str(), "2391.11");
  EXPECT_EQ(ag::lub(g, country)->str(), "2391.60");
  auto i = arc("22", "W/i", "23");
  EXPECT_EQ(ag::glb(g, i)->str(), "2391.29");
  EXPECT_EQ(ag::lub(g, i)->str(), "2391.60");
  EXPECT_FALSE(ag::glb(g, arc("12", "W/this", "13")).has_value());
  EXPECT_FALSE(ag::lub(g, arc("23", "W/think", "24")).has_value());
  auto bare = AnnotationGraph::build({arc("1", "A/x", "2")});
  EXPECT_FALSE(ag::glb(bare, arc("1", "A/x", "2")).has_value());
}

TEST(Relations, PrecedesAndBoundsMatchOracles) {
  std::mt19937_64 rng(20261014);
  for (int round = 0; round < 300; ++round) {
    auto g = AnnotationGraph::build(agtest::random_parts(rng));
    auto oracle = agtest::precedence_oracle(g);
    auto reach = agtest::closure(agtest::adjacency(g));
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      EXPECT_FALSE(ag::precedes(g, i, i));
      for (std::size_t j = 0; j < g.node_count(); ++j) {
        ASSERT_EQ(ag::precedes(g, i, j), oracle[i][j] != 0) << round;
        ASSERT_EQ(g.reaches(i, j), reach[i][j] != 0) << round;
      }
    }
    for (std::size_t a = 0; a < g.arc_count(); ++a) {
      const TimeRef* lo = agtest::glb_oracle(g, a);
      const TimeRef* hi = agtest::lub_oracle(g, a);
      auto got_lo = ag::glb(g, g.arcs()[a]);
      auto got_hi = ag::lub(g, g.arcs()[a]);
      ASSERT_EQ(lo != nullptr, got_lo.has_value());
      ASSERT_EQ(hi != nullptr, got_hi.has_value());
      if (lo) EXPECT_EQ(*lo, *got_lo);
      if (hi) EXPECT_EQ(*hi, *got_hi);
    }
  }
}

TEST(Algebra, IdentityAndComplement) {
  auto g = utf();
  EXPECT_EQ(ag::unite(g, AnnotationGraph()), g);
  EXPECT_TRUE(ag::relative_complement(g, g).empty());
  EXPECT_EQ(ag::intersect(g, g), g);
}

TEST(Algebra, AnchoredIntersectionCounterexample) {
  auto g1 = AnnotationGraph::build({arc("1", "A/x", "2"), arc("2", "A/y", "3")},
                                   times({{"1", "0"}, {"3", "5"}}));
  auto g2 = AnnotationGraph::build({arc("1", "A/x", "2"), arc("2", "A/z", "4")},
                                   times({{"1", "0"}, {"4", "7"}}));
  EXPECT_EQ(ag::classify_anchoring(g1), AnchorClass::Anchored);
  EXPECT_EQ(ag::classify_anchoring(g2), AnchorClass::Anchored);
  EXPECT_EQ(ag::classify_anchoring(ag::unite(g1, g2)), AnchorClass::Anchored);
  auto both = ag::intersect(g1, g2);
  EXPECT_EQ(both.arc_count(), 1u);
  EXPECT_EQ(ag::classify_anchoring(both), AnchorClass::General);
}

TEST(Algebra, ConflictsAndCycles) {
  auto g1 = AnnotationGraph::build({arc("1", "A/x", "2")}, times({{"1", "0"}}));
  auto g2 = AnnotationGraph::build({arc("1", "A/y", "3")}, times({{"1", "1"}}));
  EXPECT_THROW(ag::unite(g1, g2), ag::AnchorConflict);
  auto back = AnnotationGraph::build({arc("2", "A/z", "1")});
  EXPECT_THROW(ag::unite(g1, back), ag::CycleError);
}

TEST(Algebra, EverySubsetIsAGraph) {
  auto g = utf();
  for (unsigned mask = 0; mask < (1u << g.arc_count()); ++mask) {
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < g.arc_count(); ++a) {
      if (mask & (1u << a)) keep.push_back(a);
    }
    auto sub = ag::subgraph(g, keep);
    EXPECT_EQ(sub.arc_count(), keep.size());
    for (const auto& [id, t] : sub.anchors()) EXPECT_EQ(*g.time(id), t);
  }
}

TEST(TypeOrder, ClosureAndErrors) {
  ag::TypeOrder o = ag::TypeOrder::parse("# levels\nWord > Syllable > Phoneme\n\n");
  EXPECT_TRUE(o.higher("Word", "Phoneme"));
  EXPECT_FALSE(o.higher("Phoneme", "Word"));
  EXPECT_FALSE(o.higher("Word", "Word"));
  EXPECT_THROW(ag::TypeOrder(std::vector<std::pair<std::string, std::string>>{{"A", "A"}}),
               ag::InvalidTypeOrder);
  EXPECT_THROW(ag::TypeOrder({{"A", "B"}, {"B", "C"}, {"C", "A"}}),
               ag::InvalidTypeOrder);
  EXPECT_THROW(ag::TypeOrder::parse("A >"), ag::SyntaxError);
  EXPECT_THROW(ag::TypeOrder::parse("A B"), ag::SyntaxError);
}

TEST(Equivalence, GesturalScoreClass) {
  auto g = ag::parse(agtest::read_fixture("gestural.ag"));
  auto map = ag::resolve_equivalence_classes(g, {"license"});
  ASSERT_EQ(map.size(), 2u);
  const auto& members = map.members({"license", "w35"});
  EXPECT_EQ(members.size(), 4u);
  for (const auto& m : members) EXPECT_EQ(m.label.str(), "license/w35");
  auto linked = map.linked(g, {"license", "w35"});
  EXPECT_TRUE(linked.count(arc("1", "W/ten", "4")));
  EXPECT_EQ(map.classes_of(g, arc("1", "W/ten", "4")).size(), 1u);
  EXPECT_TRUE(ag::resolve_equivalence_classes(g, {}).empty());
}

TEST(Equivalence, DisjointSpansShareClass) {
  auto g = AnnotationGraph::build({arc("1", "license/x", "2"), arc("5", "license/x", "6")});
  auto map = ag::resolve_equivalence_classes(g, {"license"});
  EXPECT_EQ(map.members({"license", "x"}).size(), 2u);
}

}  // namespace
