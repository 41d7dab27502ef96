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
#include <optional>
#include <regex>
#include <sstream>

#include "ag/encoding.hpp"
#include "ag/import.hpp"
#include "ag/index.hpp"
#include "ag/relations.hpp"
#include "support.hpp"

namespace {

using ag::AnchorClass;
using ag::AnnotationGraph;
using ag::Arc;
using ag::TimeRef;

std::string fixture(const std::string& name) { return agtest::read_fixture("import/" + name); }

std::vector<Arc> of_type(const AnnotationGraph& g, const std::string& type) {
  std::vector<Arc> out;
  for (const auto& a : g.arcs()) {
    if (a.label.type() == type) out.push_back(a);
  }
  return out;
}

const Arc& only(const AnnotationGraph& g, const std::string& type, const std::string& content) {
  const Arc* found = nullptr;
  for (const auto& a : g.arcs()) {
    if (a.label.type() == type && a.label.content() == content) {
      EXPECT_EQ(found, nullptr) << "two arcs " << type << "/" << content;
      found = &a;
    }
  }
  if (!found) throw std::runtime_error("no arc " + type + "/" + content);
  return *found;
}

std::string when(const AnnotationGraph& g, const ag::NodeId& n) {
  const TimeRef* t = g.time(n);
  return t ? t->canonical() : "-";
}

std::set<std::string> anchor_times(const AnnotationGraph& g) {
  std::set<std::string> out;
  for (const auto& [n, t] : g.anchors()) out.insert(t.canonical());
  return out;
}

// Serialization is a fixpoint and repeated imports agree byte for byte.
void expect_stable(const std::function<ag::ImportedGraph()>& run) {
  auto first = run().graph;
  auto text = ag::serialize(first);
  EXPECT_EQ(ag::serialize(run().graph), text);
  EXPECT_EQ(ag::parse(text), first);
}

// --- TIMIT ---

ag::ImportedGraph timit() { return ag::import_timit(fixture("sa1.wrd"), fixture("sa1.phn")); }

TEST(ImportTimit, SharesNodesBySample) {
  auto g = timit().graph;
  EXPECT_EQ(of_type(g, "W").size(), 11u);
  EXPECT_EQ(of_type(g, "P").size(), 10u);
  EXPECT_EQ(classify_anchoring(g), AnchorClass::TotallyAnchored);

  const Arc& she = only(g, "W", "she");
  const Arc& had = only(g, "W", "had");
  const Arc& iy = only(g, "P", "iy");
  const Arc& hv = only(g, "P", "hv");
  EXPECT_EQ(she.dst, had.src);
  EXPECT_EQ(iy.dst, she.dst);
  EXPECT_EQ(hv.src, she.dst);
  auto n = *g.find(she.dst);
  EXPECT_EQ(g.incoming(n).size() + g.outgoing(n).size(), 4u);
  EXPECT_EQ(when(g, she.dst), "0.325");  // 5200 / 16000
  EXPECT_EQ(when(g, only(g, "W", "your").dst), "0.6923125");
}

TEST(ImportTimit, GapSplitsComponents) {
  // wash ends at 36150 and water starts at 36720.
  EXPECT_EQ(component_count(timit().graph), 2u);
}

TEST(ImportTimit, WordPostedToTwoPhoneIntervals) {
  auto g = timit().graph;
  auto idx = ag::TimeLocalIndex::build(g);
  auto [first, last] = idx.intervals_of(*g.find(only(g, "W", "she")));
  EXPECT_EQ(last - first, 2u);
}

TEST(ImportTimit, RateAndErrors) {
  ag::ImportOptions opts;
  opts.sample_rate = 8000;
  auto g = ag::import_timit("0 8000 a\n", "", opts).graph;
  EXPECT_EQ(when(g, only(g, "W", "a").dst), "1");
  EXPECT_THROW(ag::import_timit("0 10\n", ""), ag::SyntaxError);
  EXPECT_THROW(ag::import_timit("10 x a\n", ""), ag::SyntaxError);
  EXPECT_THROW(ag::import_timit("10 10 a\n", ""), ag::NonMonotonicSpan);
  EXPECT_THROW(ag::import_timit("", "20 10 a\n"), ag::NonMonotonicSpan);
}

TEST(ImportTimit, Stable) { expect_stable(timit); }

// --- Partitur ---

ag::ImportedGraph partitur() { return ag::import_partitur(fixture("verbmobil.par")); }

TEST(ImportPartitur, Tiers) {
  auto g = partitur().graph;
  EXPECT_EQ(of_type(g, "K").size(), 7u);
  EXPECT_EQ(of_type(g, "O").size(), 7u);
  EXPECT_EQ(of_type(g, "M").size(), 23u);
  EXPECT_EQ(of_type(g, "TRL").size(), 9u);
  EXPECT_EQ(of_type(g, "D").size(), 2u);
  EXPECT_GE(classify_anchoring(g), AnchorClass::Anchored);
}

TEST(ImportPartitur, MausTimes) {
  auto g = partitur().graph;
  const Arc& j = only(g, "M", "j");
  EXPECT_EQ(when(g, j.src), "0.26");
  EXPECT_EQ(when(g, j.dst), "0.33");  // (4160 + 1120) / 16000
  const Arc& p = only(g, "M", "<p:>");
  EXPECT_EQ(when(g, p.dst), "2.16");
}

TEST(ImportPartitur, DialogActSpansWords) {
  auto g = partitur().graph;
  const Arc& thank = only(g, "D", "@(THANK_INIT BA)");
  EXPECT_EQ(thank.src, only(g, "O", "ja").src);
  EXPECT_EQ(thank.dst, only(g, "O", "Dank").dst);
  EXPECT_EQ(when(g, thank.dst), "1.07");
  const Arc& fb = only(g, "D", "@(FEEDBACK_ACKNOWLEDGEMENT BA)");
  EXPECT_EQ(fb.src, only(g, "O", "das").src);
  EXPECT_EQ(fb.dst, only(g, "O", "nett").dst);
  EXPECT_EQ(only(g, "K", "j'a:").src, only(g, "M", "j").src);
  EXPECT_EQ(only(g, "K", "j'a:").dst, only(g, "M", "a:").dst);
}

TEST(ImportPartitur, UnlinkedSegmentsTouchNoWord) {
  auto g = partitur().graph;
  const Arc& nib = only(g, "M", "<nib>");
  for (const auto& w : of_type(g, "O")) {
    EXPECT_FALSE(ag::s_includes(g, w, nib)) << w.label.str();
  }
}

TEST(ImportPartitur, KanOnlyIsOrderedChain) {
  auto g = ag::import_partitur("KAN: 2 c\nKAN: 0 a\nKAN: 1 b\n").graph;
  ASSERT_EQ(g.arc_count(), 3u);
  EXPECT_TRUE(g.anchors().empty());
  EXPECT_EQ(only(g, "K", "a").dst, only(g, "K", "b").src);
  EXPECT_EQ(only(g, "K", "b").dst, only(g, "K", "c").src);
}

TEST(ImportPartitur, Errors) {
  EXPECT_THROW(ag::import_partitur("KAN: 0 a\nORT: 1 b\n"), ag::DanglingAnchor);
  EXPECT_THROW(ag::import_partitur("KAN: 0 a\nDAS: 0,1 x\n"), ag::DanglingAnchor);
  EXPECT_THROW(ag::import_partitur("KAN: 0 a\nKAN: 1 b\nKAN: 2 c\nDAS: 0,2 x\n"),
               ag::SyntaxError);
  EXPECT_THROW(ag::import_partitur("XYZ: 0 a\n"), ag::SyntaxError);
  EXPECT_THROW(ag::import_partitur("MAU: 10 x 0 a\n"), ag::SyntaxError);
}

TEST(ImportPartitur, Stable) { expect_stable(partitur); }

// --- CHAT ---

TEST(ImportChat, FragmentTokens) {
  auto r = ag::import_chat(fixture("boys73.cha"));
  auto g = r.graph;
  EXPECT_EQ(r.comments.size(), 11u);
  EXPECT_EQ(r.comments[2],
            "@Participants:  ROS Ross Child, MAR Mark Child, FAT Brian Father, MOT Mary Mother");
  EXPECT_EQ(of_type(g, "speaker").size(), 4u);
  const Arc& ros = only(g, "speaker", "ROS");
  EXPECT_EQ(only(g, "W", "yahoo").src, ros.src);
  EXPECT_EQ(g.time(ros.dst), nullptr);
  const auto ids = component_ids(g);
  std::size_t in_ros = 0;
  for (const auto& a : g.arcs()) in_ros += ids[*g.find(a.src)] == ids[*g.find(ros.src)];
  EXPECT_EQ(in_ros, 3u);
  // you got a lot more to do don't you / because I'm not ready to go to the
  // bathroom, plus yahoo and yeah.
  EXPECT_EQ(of_type(g, "W").size(), 20u);
  std::multiset<std::string> meta;
  for (const auto& a : of_type(g, "meta")) meta.insert(a.label.content());
  EXPECT_EQ(meta, (std::multiset<std::string>{"#", "<", ">", "[>]", "+/."}));
  EXPECT_EQ(of_type(g, "punct").size(), 3u);
}

TEST(ImportChat, UntimedTurnsAreSeparateComponents) {
  auto g = ag::import_chat(fixture("boys73.cha")).graph;
  EXPECT_EQ(component_count(g), 4u);
  EXPECT_EQ(classify_anchoring(g), AnchorClass::General);
}

TEST(ImportChat, SoundTiers) {
  auto g = ag::import_chat(fixture("boys73_snd.cha")).graph;
  EXPECT_EQ(anchor_times(g), (std::set<std::string>{"4.362", "6.065", "9.58"}));
  EXPECT_EQ(of_type(g, "file").size(), 2u);
  const Arc& ros = only(g, "speaker", "ROS");
  const Arc& fat = only(g, "speaker", "FAT");
  EXPECT_EQ(ros.dst, fat.src);
  EXPECT_EQ(component_count(g), 1u);
  EXPECT_EQ(only(g, "com", "laughs").src, fat.src);
  EXPECT_EQ(classify_anchoring(g), AnchorClass::Anchored);
}

TEST(ImportChat, GapBetweenTimedTurns) {
  auto g = ag::import_chat(fixture("two_turns_gap.cha")).graph;
  EXPECT_EQ(component_count(g), 2u);
}

TEST(ImportChat, Errors) {
  EXPECT_THROW(ag::import_chat("%snd: \"f\" 1 2\n*A: x\n"), ag::OrphanDependentTier);
  EXPECT_THROW(ag::import_chat("*A: x\n%snd: f 9 2\n"), ag::NonMonotonicSpan);
  EXPECT_THROW(ag::import_chat("*A: x\n%snd: f two\n"), ag::SyntaxError);
  EXPECT_THROW(ag::import_chat("hello\n"), ag::SyntaxError);
}

TEST(ImportChat, Stable) {
  expect_stable([] { return ag::import_chat(fixture("boys73_snd.cha")); });
}

// --- LACITO ---

TEST(ImportLacito, HayuSentence) {
  auto g = ag::import_lacito(fixture("hayu.xml")).graph;
  EXPECT_EQ(anchor_times(g), (std::set<std::string>{"0", "5.5467"}));
  std::set<std::string> spelled;
  for (const auto& [n, t] : g.anchors()) spelled.insert(t.str());
  EXPECT_EQ(spelled, (std::set<std::string>{"0.0000", "5.5467"}));
  EXPECT_EQ(of_type(g, "W").size(), 6u);
  EXPECT_EQ(of_type(g, "M").size(), 6u);
  EXPECT_EQ(of_type(g, "T").size(), 1u);
  EXPECT_EQ(g.arc_count(), 13u);
  EXPECT_EQ(classify_anchoring(g), AnchorClass::Anchored);

  EXPECT_EQ(only(g, "W", "si\xC5\x8B").src, only(g, "M", "bois").src);
  EXPECT_EQ(only(g, "W", "la\xCA\x94natshem").dst, only(g, "M", "all\xC3\xA8rent(D)").dst);
  const Arc t = of_type(g, "T").front();
  EXPECT_EQ(t.label.content(),
            "On raconte que deux soeurs all\xC3\xA8rent un jour chercher du bois.");
  EXPECT_EQ(t.src, only(g, "W", "nakpu").src);
  EXPECT_EQ(t.dst, only(g, "W", "are.").dst);
}

TEST(ImportLacito, EmptyTranscription) {
  auto g = ag::import_lacito(
               "<S><TRANSCR></TRANSCR><AUDIO start=\"1\" end=\"2\"/>"
               "<TRADUC>rien</TRADUC></S>")
               .graph;
  ASSERT_EQ(g.arc_count(), 1u);
  EXPECT_EQ(when(g, g.arcs()[0].src), "1");
  EXPECT_EQ(when(g, g.arcs()[0].dst), "2");
}

TEST(ImportLacito, Errors) {
  EXPECT_THROW(ag::import_lacito("<S><TRANSCR><W>a</W><W>b</W></TRANSCR>"
                                 "<MOTAMOT><W>x</W></MOTAMOT></S>"),
               ag::AlignmentMismatch);
  EXPECT_THROW(ag::import_lacito("<S><TRANSCR></S>"), ag::XmlError);
  EXPECT_THROW(ag::import_lacito("<S><W>&bogus;</W></S>"), ag::XmlError);
  EXPECT_THROW(ag::import_lacito("<S><TRANSCR>"), ag::XmlError);
}

// --- LDC Broadcast News ---

ag::ImportedGraph hub4() { return ag::import_ldc_bn(fixture("hub4.sgml")); }

// Words of the fixture, counted straight from the text lines.
std::size_t hub4_words() {
  std::istringstream in(fixture("hub4.sgml"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string w;
    if (!(words >> w) || w[0] == '<') continue;
    do {
      if (w[0] != '{') ++n;
    } while (words >> w);
  }
  return n;
}

TEST(ImportLdcBn, WordChainAnchoredAtSyncs) {
  auto g = hub4().graph;
  EXPECT_EQ(of_type(g, "W").size(), hub4_words());
  EXPECT_EQ(of_type(g, "noise").size(), 4u);
  const Arc& tad = only(g, "speaker", "Tad_Bile");
  EXPECT_EQ(when(g, tad.src), "4.233");
  EXPECT_EQ(when(g, tad.dst), "13.981");
  std::set<std::string> chain;
  for (const auto& a : of_type(g, "W")) {
    if (!ag::s_includes(g, tad, a)) continue;
    for (const auto& n : {a.src, a.dst}) {
      if (g.time(n)) chain.insert(when(g, n));
    }
  }
  EXPECT_EQ(chain, (std::set<std::string>{"4.233", "8.015", "11.04", "13.981"}));
  EXPECT_EQ(when(g, only(g, "W", "been").dst), "8.015");
  EXPECT_EQ(only(g, "fidelity", "Low").src, tad.src);
  EXPECT_EQ(only(g, "mode", "Planned").dst, only(g, "speaker", "Noah_Adams").dst);
  EXPECT_GE(classify_anchoring(g), AnchorClass::Anchored);
}

TEST(ImportLdcBn, BackgroundsCrossSegments) {
  auto g = hub4().graph;
  const Arc& high = only(g, "M", "high");
  EXPECT_EQ(when(g, high.src), "0");
  EXPECT_EQ(when(g, high.dst), "4.233");
  std::vector<std::pair<std::string, std::string>> lows;
  for (const auto& a : of_type(g, "M")) {
    if (a.label.content() == "low") lows.emplace_back(when(g, a.src), when(g, a.dst));
  }
  std::sort(lows.begin(), lows.end());
  EXPECT_EQ(lows, (std::vector<std::pair<std::string, std::string>>{
                      {"23.613", "59.989"}, {"4.233", "23.613"}}));
  const Arc& section = only(g, "section", "Filler");
  EXPECT_EQ(when(g, section.src), "4.233");
  EXPECT_EQ(when(g, section.dst), "59.989");
}

TEST(ImportLdcBn, SegmentWithoutSyncs) {
  auto g = ag::import_ldc_bn("<Segment S_time=1 E_time=2 Speaker=x>a b c</Segment>").graph;
  EXPECT_EQ(anchor_times(g), (std::set<std::string>{"1", "2"}));
  EXPECT_EQ(of_type(g, "W").size(), 3u);
}

TEST(ImportLdcBn, Errors) {
  EXPECT_THROW(ag::import_ldc_bn("<Segment S_time=1 E_time=9>a<Sync Time=5>b<Sync Time=3>c"
                                 "</Segment>"),
               ag::NonMonotonicSync);
  EXPECT_THROW(ag::import_ldc_bn("<Segment S_time=1 E_time=9>a<Sync Time=10></Segment>"),
               ag::NonMonotonicSync);
  EXPECT_THROW(ag::import_ldc_bn("<Turn>"), ag::SyntaxError);
  EXPECT_THROW(ag::import_ldc_bn("stray words"), ag::SyntaxError);
  EXPECT_THROW(ag::import_ldc_bn("<Segment S_time=1 E_time=9>a"), ag::SyntaxError);
}

TEST(ImportLdcBn, Stable) { expect_stable(hub4); }

// --- CALLHOME ---

struct Stretch {
  char marker;
  std::string speaker;
};

std::vector<Stretch> callhome_stretches() {
  static const std::regex header(R"(^\s*([*+])?\s*[0-9.]+\s+[0-9.]+\s+(\w+):.*$)");
  std::vector<Stretch> out;
  std::istringstream in(fixture("callhome.txt"));
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, header)) {
      out.push_back({m[1].matched ? m[1].str()[0] : ' ', m[2]});
    }
  }
  return out;
}

std::size_t callhome_words() {
  std::istringstream in(fixture("callhome.txt"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    std::istringstream words(colon == std::string::npos ? line : line.substr(colon + 1));
    std::string w;
    while (words >> w) ++n;
  }
  return n;
}

TEST(ImportCallhome, OneComponentPerStretch) {
  auto g = ag::import_callhome(fixture("callhome.txt")).graph;
  auto stretches = callhome_stretches();
  ASSERT_EQ(stretches.size(), 22u);
  EXPECT_EQ(component_count(g), stretches.size());
  EXPECT_EQ(of_type(g, "W").size(), callhome_words());
  EXPECT_EQ(classify_anchoring(g), AnchorClass::Anchored);
}

TEST(ImportCallhome, OverlapIsImplicit) {
  auto g = ag::import_callhome(fixture("callhome.txt")).graph;
  auto ids = component_ids(g);
  const Arc& he = *std::find_if(g.arcs().begin(), g.arcs().end(), [&](const Arc& a) {
    return a.label.str() == "W/He" && when(g, a.src) == "962.68";
  });
  std::optional<Arc> b;
  for (const auto& a : of_type(g, "speaker")) {
    if (a.label.content() == "B" && when(g, a.src) == "968.71") b = a;
  }
  ASSERT_TRUE(b.has_value());
  EXPECT_NE(ids[*g.find(he.src)], ids[*g.find(b->src)]);
  for (const auto& a : of_type(g, "speaker")) {
    if (a.label.content() == "A") EXPECT_FALSE(ag::s_includes(g, a, *b));
  }
}

// Turns under the merge rule: a stretch continues its speaker's latest turn
// when everything since is a total overlap by someone else.
std::size_t merged_turns(const std::vector<Stretch>& s) {
  std::map<std::string, std::size_t> last;
  std::size_t turns = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto it = last.find(s[i].speaker);
    bool merge = it != last.end();
    for (std::size_t k = merge ? it->second + 1 : i; merge && k < i; ++k) {
      merge = s[k].marker == '*';
    }
    if (!merge) ++turns;
    last[s[i].speaker] = i;
  }
  return turns;
}

TEST(ImportCallhome, MergeSameSpeaker) {
  ag::ImportOptions opts;
  opts.merge_same_speaker = true;
  auto g = ag::import_callhome(fixture("callhome.txt"), opts).graph;
  auto turns = merged_turns(callhome_stretches());
  EXPECT_EQ(of_type(g, "speaker").size(), turns);
  EXPECT_EQ(component_count(g), turns);
  EXPECT_EQ(of_type(g, "W").size(), callhome_words());

  std::optional<Arc> long_turn;
  for (const auto& a : of_type(g, "speaker")) {
    if (a.label.content() == "A" && when(g, a.src) == "962.68") long_turn = a;
  }
  ASSERT_TRUE(long_turn.has_value());
  EXPECT_EQ(when(g, long_turn->dst), "989.56");
  std::set<std::string> interior;
  auto s = *g.find(long_turn->src);
  auto d = *g.find(long_turn->dst);
  for (const auto& [n, t] : g.anchors()) {
    auto i = *g.find(n);
    if (i != s && i != d && g.reaches(s, i) && g.reaches(i, d)) interior.insert(t.canonical());
  }
  EXPECT_TRUE(interior.count("979.47"));
  EXPECT_TRUE(interior.count("980.18"));
  EXPECT_TRUE(interior.count("970.21"));
  EXPECT_TRUE(interior.count("970.35"));
  EXPECT_GE(classify_anchoring(g), AnchorClass::Anchored);
}

TEST(ImportCallhome, SingleLine) {
  auto g = ag::import_callhome("1.5 2.5 A: hello there\n").graph;
  EXPECT_EQ(component_count(g), 1u);
  EXPECT_EQ(anchor_times(g), (std::set<std::string>{"1.5", "2.5"}));
  EXPECT_THROW(ag::import_callhome("junk first\n1 2 A: x\n"), ag::SyntaxError);
  EXPECT_THROW(ag::import_callhome("3 2 A: x\n"), ag::NonMonotonicSpan);
}

// --- UTF ---

ag::ImportedGraph hub4_utf() { return ag::import_utf(fixture("hub4_utf.utf")); }

TEST(ImportUtf, TurnsAreComponents) {
  auto g = hub4_utf().graph;
  EXPECT_EQ(component_count(g), 2u);
  const Arc& roger = only(g, "speaker", "Roger_Hedgecock");
  EXPECT_EQ(when(g, roger.src), "2348.811875");
  EXPECT_EQ(when(g, roger.dst), "2391.606");
  EXPECT_EQ(only(g, "spkrtype", "male").src, roger.src);
  EXPECT_EQ(only(g, "spkrtype", "female").src, only(g, "speaker", "Gloria_Allred").src);
  EXPECT_EQ(when(g, only(g, "W", "country").src), "2391.115375");
  EXPECT_EQ(only(g, "W", "country").dst, roger.dst);
  EXPECT_GE(classify_anchoring(g), AnchorClass::Anchored);
}

TEST(ImportUtf, OverlapInTimeOnly) {
  auto g = hub4_utf().graph;
  auto idx = ag::TimeLocalIndex::build(g);
  const Arc& country = only(g, "W", "country");
  auto overlapping = idx.overlapping_arcs(country);
  const Arc& well = only(g, "W", "well");
  auto is = of_type(g, "W");
  auto i = std::find_if(is.begin(), is.end(), [&](const Arc& a) { return a.src == well.dst; });
  ASSERT_NE(i, is.end());
  EXPECT_EQ(i->label.content(), "i");
  for (const Arc& a : {well, *i}) {
    EXPECT_TRUE(overlapping.count(a)) << a.label.str();
    EXPECT_FALSE(ag::s_precedes(g, a.src, country.dst));
  }
  EXPECT_EQ(when(g, well.src), "2391.299625");
  EXPECT_EQ(when(g, i->dst), "2391.606");
}

TEST(ImportUtf, Contractions) {
  auto g = hub4_utf().graph;
  const Arc& w = only(g, "W", "you've");
  const Arc& you = only(g, "L", "you");
  const Arc& have = only(g, "L", "have");
  EXPECT_EQ(you.src, w.src);
  EXPECT_EQ(you.dst, have.src);
  EXPECT_EQ(have.dst, w.dst);
  EXPECT_EQ(g.time(you.dst), nullptr);
  EXPECT_EQ(only(g, "L", "is").dst, only(g, "W", "that's").dst);
}

TEST(ImportUtf, MarkupTokens) {
  auto g = hub4_utf().graph;
  const Arc& org = only(g, "NE", "ORGANIZATION");
  const Arc& congress = only(g, "W", "congress");
  EXPECT_EQ(org.src, congress.src);
  EXPECT_EQ(org.dst, congress.dst);
  EXPECT_EQ(when(g, congress.dst), "2382.539437");
  only(g, "W", "set-asides");
  EXPECT_EQ(of_type(g, "noise").size(), 3u);
  EXPECT_EQ(of_type(g, "elided").size(), 2u);
  auto elided = of_type(g, "elided");
  EXPECT_TRUE(std::any_of(elided.begin(), elided.end(),
                          [&](const Arc& a) { return when(g, a.dst) == "2378.629937"; }));
}

TEST(ImportUtf, EndpointsOnly) {
  auto g = ag::import_utf(
               "<turn speaker=a spkrtype=male startTime=1 endTime=2>x y</turn>")
               .graph;
  EXPECT_EQ(anchor_times(g), (std::set<std::string>{"1", "2"}));
  EXPECT_EQ(of_type(g, "W").size(), 2u);
}

TEST(ImportUtf, Errors) {
  const std::string turn = "<turn speaker=a spkrtype=male startTime=1 endTime=2>";
  EXPECT_THROW(ag::import_utf(turn + "x<e_overlap></turn>"), ag::UnbalancedTag);
  EXPECT_THROW(ag::import_utf(turn + "<b_enamex type=X>x</turn>"), ag::UnbalancedTag);
  EXPECT_THROW(ag::import_utf(turn + "x"), ag::UnbalancedTag);
  EXPECT_THROW(ag::import_utf("</turn>"), ag::UnbalancedTag);
  EXPECT_THROW(ag::import_utf(turn + "x<time sec=5>y</turn>"), ag::SyntaxError);
  EXPECT_THROW(ag::import_utf(turn + "<contraction e_form=\"[a=>b]\">c</turn>"),
               ag::SyntaxError);
  EXPECT_THROW(ag::import_utf(turn + "<blink>x</turn>"), ag::SyntaxError);
}

TEST(ImportUtf, Stable) { expect_stable(hub4_utf); }

// --- Emu ---

ag::ImportedGraph emu() {
  return ag::import_emu(fixture("price_range.hier"), {fixture("price_range.lab")});
}

TEST(ImportEmu, PhoneticSegmentsShareNodes) {
  auto g = emu().graph;
  EXPECT_EQ(of_type(g, "S").size(), 13u);
  EXPECT_EQ(of_type(g, "P").size(), 10u);
  EXPECT_EQ(only(g, "S", "D").dst, only(g, "S", "@").src);
  EXPECT_EQ(when(g, only(g, "S", "D").src), "0");
  EXPECT_EQ(when(g, only(g, "S", "Z").dst), "0.9");
  EXPECT_EQ(classify_anchoring(g), AnchorClass::TotallyAnchored);
}

TEST(ImportEmu, HigherLevelsSpanDominatedSegments) {
  auto g = emu().graph;
  const Arc& the = only(g, "W", "F");
  EXPECT_EQ(the.src, only(g, "S", "D").src);
  EXPECT_EQ(the.dst, only(g, "S", "@").dst);
  const Arc& text = only(g, "Text", "the");
  EXPECT_EQ(text.src, the.src);
  EXPECT_EQ(text.dst, the.dst);
  EXPECT_EQ(only(g, "Syl", "W").dst, the.dst);
  const Arc& price = only(g, "Text", "price");
  EXPECT_EQ(when(g, price.src), "0.09");
  EXPECT_EQ(when(g, price.dst), "0.52");
  EXPECT_EQ(when(g, only(g, "Pitch_Accent", "!H*").dst), "0.9");
  const Arc& p = only(g, "P", "p");
  EXPECT_EQ(when(g, p.src), "0.09");
  EXPECT_EQ(when(g, p.dst), "0.21");
  const Arc& utt = only(g, "Utterance", "");
  EXPECT_EQ(when(g, utt.src), "0");
  EXPECT_EQ(when(g, utt.dst), "0.9");
  EXPECT_EQ(only(g, "Intermediate", "L-").dst, utt.dst);
  EXPECT_EQ(component_count(g), 1u);
}

TEST(ImportEmu, WithoutDominance) {
  auto g = ag::import_emu(
               "labfile Phonetic :mark END :time-factor 1000\n\nPhonetic Phonetic\n0 a 1 b\n",
               {"#\n0.1 125 a\n0.2 125 b\n"})
               .graph;
  EXPECT_EQ(g.arc_count(), 2u);
  EXPECT_EQ(of_type(g, "S").size(), 2u);
}

TEST(ImportEmu, Errors) {
  const std::string head = "labfile Phonetic :mark END\n\nPhonetic Phonetic\n0 a\n\n";
  const std::string lab = "#\n0.1 125 a\n";
  EXPECT_THROW(ag::import_emu(head + "0 7\n", {lab}), ag::DanglingDominance);
  EXPECT_THROW(ag::import_emu(head, {"#\n0.1 125 b\n"}), ag::AlignmentMismatch);
  EXPECT_THROW(ag::import_emu(head, {}), ag::SyntaxError);
  EXPECT_THROW(ag::import_emu("labfile Phonetic :time-factor zero\n", {lab}), ag::SyntaxError);
  EXPECT_THROW(ag::import_emu("Phonetic Phoneme\n", {}), ag::SyntaxError);
}

TEST(ImportEmu, Stable) { expect_stable(emu); }

TEST(ImportFormats, Names) {
  for (auto name : {"timit", "partitur", "chat", "lacito", "ldc-bn", "callhome", "utf", "emu"}) {
    auto f = ag::parse_source_format(name);
    ASSERT_TRUE(f.has_value()) << name;
    EXPECT_EQ(ag::to_string(*f), name);
  }
  EXPECT_FALSE(ag::parse_source_format("tei").has_value());
}

TEST(ImportOptions, PrefixesAndTypeMap) {
  ag::ImportOptions opts;
  opts.node_prefix = "t";
  opts.type_prefix_map = {{"wrd", "word"}};
  auto g = ag::import_timit("0 10 a\n", "", opts).graph;
  ASSERT_EQ(g.arc_count(), 1u);
  EXPECT_EQ(g.arcs()[0].label.str(), "word/a");
  EXPECT_EQ(g.arcs()[0].src.str().substr(0, 1), "t");
}

}  // namespace
