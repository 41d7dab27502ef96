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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ag/algebra.hpp"
#include "ag/encoding.hpp"
#include "support.hpp"

namespace {

using ag::AnnotationGraph;

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

TEST(Encoding, SerializeExamples) {
  auto g = ag::parse(agtest::read_fixture("utf_tuples.ag"));
  std::string text = ag::serialize(g);
  EXPECT_NE(text.find("<22/> W/i <23/2391.60>\n"), std::string::npos);
  EXPECT_NE(text.find("<11/2348.81> speaker/Roger-Hedgecock <14/2391.60>\n"),
            std::string::npos);
  EXPECT_EQ(ag::serialize(AnnotationGraph()), "");
  auto lines = split_lines(text);
  EXPECT_EQ(lines.size(), 9u);
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
}

TEST(Encoding, CanonicalTimesOnRequest) {
  auto g = ag::parse("<1/2.50> A/x <2/3.0>\n");
  EXPECT_EQ(ag::serialize(g), "<1/2.50> A/x <2/3.0>\n");
  ag::SerializeOptions opts;
  opts.preserve_times = false;
  EXPECT_EQ(ag::serialize(g, opts), "<1/2.5> A/x <2/3>\n");
}

TEST(Encoding, NineLinesParse) {
  auto text = agtest::read_fixture("utf_tuples.ag");
  auto g = ag::parse(text);
  EXPECT_EQ(g.arc_count(), 9u);
  EXPECT_EQ(g.node_count(), 9u);
  EXPECT_EQ(g.anchors().size(), 6u);
  std::set<ag::TimeRef> distinct;
  for (const auto& [id, t] : g.anchors()) distinct.insert(t);
  EXPECT_EQ(distinct.size(), 5u);
  EXPECT_EQ(g.time(ag::NodeId("25"))->str(), "2439.82");
  EXPECT_EQ(ag::classify_anchoring(g), ag::AnchorClass::General);

  std::mt19937_64 rng(7);
  auto lines = split_lines(text);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (const auto& l : lines) shuffled += l + "\n";
    EXPECT_EQ(ag::parse(shuffled), g);
  }
}

TEST(Encoding, PrintedBlockTimeTypoIsAnOrderViolation) {
  // As printed, node 21 sits at 3291.29 and precedes node 25 at 2439.82.
  EXPECT_THROW(ag::parse(agtest::read_fixture("utf_tuples_verbatim.ag")),
               ag::OrderViolation);
}

TEST(Encoding, ParseErrors) {
  EXPECT_THROW(ag::parse("<1/0.5> W/a <2/0.2>"), ag::OrderViolation);
  EXPECT_THROW(ag::parse("<1/0.5> W/a <2/0.7>\n<1/0.6> W/b <3/>"),
               ag::AnchorConflict);
  EXPECT_THROW(ag::parse("<1/> A/a <2/>\n<2/> A/b <1/>"), ag::CycleError);
  try {
    ag::parse("# header\n<1/> A/a <2/>\n<1/> A/a <2>\n");
    FAIL();
  } catch (const ag::SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 10u);
  }
  for (const char* bad : {"<1/> A/a", "<1/> Aa <2/>", "<1/> A/a <2/> x",
                          "1/ A/a <2/>", "<1/x> A/a <2/>", "<1/> A/%zz <2/>",
                          "<1/> /a <2/>", "<a b/> A/a <2/>"}) {
    EXPECT_THROW(ag::parse(bad), ag::SyntaxError) << bad;
  }
}

TEST(Encoding, DuplicatesAndEqualTimesCollapse) {
  auto g = ag::parse("<1/2.5> A/a <2/>\n<1/2.50> A/a <2/>\r\n\n");
  EXPECT_EQ(g.arc_count(), 1u);
}

TEST(Encoding, LenientAnchorMentions) {
  auto g = ag::parse("<1/> A/a <2/>\n<2/4> A/b <3/>\n");
  EXPECT_EQ(g.time(ag::NodeId("2"))->str(), "4");
}

TEST(Encoding, EscapingRoundTrips) {
  ag::Label label("T", "a b<c>%d\ne\tf/g");
  auto g = AnnotationGraph::build({ag::Arc{ag::NodeId("1"), label, ag::NodeId("2")}});
  std::string text = ag::serialize(g);
  EXPECT_EQ(text, "<1/> T/a%20b%3Cc%3E%25d%0Ae%09f/g <2/>\n");
  EXPECT_EQ(ag::parse(text), g);
  EXPECT_EQ(ag::unescape_content("%3c"), "<");
}

TEST(Encoding, MergeByConcatenation) {
  std::string base = agtest::read_fixture("utf_tuples.ag");
  std::string texts[] = {base, ""};
  EXPECT_EQ(ag::merge(texts), ag::parse(base));
  // A standoff file reuses node 14.
  std::string annex = "<14/2391.60> comment/pause <30/>\n";
  std::string both[] = {base, annex};
  auto merged = ag::merge(both);
  EXPECT_EQ(merged.arc_count(), 10u);
  EXPECT_EQ(merged, ag::unite(ag::parse(base), ag::parse(annex)));
  auto ids = ag::component_ids(merged);
  auto i14 = merged.index_of(ag::NodeId("14"));
  auto i30 = merged.index_of(ag::NodeId("30"));
  EXPECT_EQ(ids[i14], ids[i30]);
}

TEST(Encoding, DeltaReplacesOneLine) {
  auto g1 = ag::parse(agtest::read_fixture("utf_tuples.ag"));
  auto text = ag::serialize(g1);
  auto pos = text.find("W/well");
  text.replace(pos, 6, "W/Well");
  auto g2 = ag::parse(text);
  auto d = ag::delta(g1, g2);
  EXPECT_EQ(d.removed.size(), 1u);
  EXPECT_EQ(d.added.size(), 1u);
  EXPECT_EQ(ag::format_delta(d),
            "- <21/2391.29> W/well <22/>\n+ <21/2391.29> W/Well <22/>\n");
  EXPECT_EQ(ag::apply(d, g1), g2);
  EXPECT_EQ(ag::apply(ag::parse_delta(ag::format_delta(d)), g1), g2);
}

TEST(Encoding, RandomRoundTripAndDelta) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto g1 = AnnotationGraph::build(agtest::random_parts(rng));
    auto g2 = AnnotationGraph::build(agtest::random_parts(rng));
    ASSERT_EQ(ag::parse(ag::serialize(g1)), g1);
    ASSERT_EQ(ag::serialize(ag::parse(ag::serialize(g1))), ag::serialize(g1));
    ASSERT_EQ(ag::apply(ag::delta(g1, g2), g1), g2);
  }
}

}  // namespace
