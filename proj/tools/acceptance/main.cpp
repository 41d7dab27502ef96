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


// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero if any fails. Run from anywhere; fixture paths are compiled in.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ag/algebra.hpp"
#include "ag/encoding.hpp"
#include "ag/errors.hpp"
#include "ag/import.hpp"
#include "ag/index.hpp"
#include "ag/query.hpp"
#include "ag/relations.hpp"
#include "ag/type_order.hpp"
#include "ag/validate.hpp"
#include "cli.hpp"
#include "support.hpp"

namespace {

using ag::AnchorClass;
using ag::AnnotationGraph;
using ag::Arc;
using Clock = std::chrono::steady_clock;

// A failed check carries its reason out of the criterion body.
struct Failure {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<void()> body;
};

std::string imp(const std::string& name) { return agtest::read_fixture("import/" + name); }

std::vector<Arc> of_type(const AnnotationGraph& g, const std::string& type) {
  std::vector<Arc> out;
  for (const Arc& a : g.arcs()) {
    if (a.label.type() == type) out.push_back(a);
  }
  return out;
}

const Arc& only(const AnnotationGraph& g, const std::string& type,
                const std::string& content) {
  const Arc* found = nullptr;
  for (const Arc& a : g.arcs()) {
    if (a.label.type() != type || a.label.content() != content) continue;
    require(found == nullptr, "several " + type + "/" + content);
    found = &a;
  }
  require(found != nullptr, "no " + type + "/" + content);
  return *found;
}

// Runs the CLI and returns stdout; a nonzero exit is a failure.
std::string cli(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out, err;
  int code = agtk::run(args, in, out, err);
  require(code == 0, "agtk exited " + std::to_string(code) + ": " + err.str());
  return out.str();
}

// Interval heading to posted lines, from the printed time-index layout.
std::map<std::string, std::multiset<std::string>> postings_by_heading(
    const std::string& text) {
  std::map<std::string, std::multiset<std::string>> out;
  std::istringstream in(text);
  std::string line, heading;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != ' ') heading = line.substr(0, 16);
    out[heading].insert(line.substr(18));
  }
  return out;
}

// The exception type name, or the serialization when the call succeeds.
std::string outcome(const std::function<AnnotationGraph()>& f) {
  try {
    return "ok\n" + ag::serialize(f());
  } catch (const ag::AnchorConflict&) {
    return "AnchorConflict";
  } catch (const ag::CycleError&) {
    return "CycleError";
  } catch (const ag::OrderViolation&) {
    return "OrderViolation";
  } catch (const ag::NotAnchored&) {
    return "NotAnchored";
  }
}

void golden_encoding() {
  std::string text = agtest::read_fixture("utf_tuples.ag");
  auto g = ag::parse(text);
  require(g.arc_count() == 9, "arcs " + std::to_string(g.arc_count()));
  require(g.node_count() == 9, "nodes " + std::to_string(g.node_count()));
  std::set<ag::TimeRef> distinct;
  for (const auto& [id, t] : g.anchors()) distinct.insert(t);
  require(distinct.size() == 5, "distinct anchor times " + std::to_string(distinct.size()));
  for (bool preserve : {true, false}) {
    ag::SerializeOptions opts{.preserve_times = preserve};
    auto once = ag::serialize(g, opts);
    require(ag::parse(once) == g, "re-parse differs");
    require(ag::serialize(ag::parse(once), opts) == once, "serialization not a fixpoint");
  }
}

void golden_time_index() {
  auto out = cli({"index", "--kind", "time", agtest::fixture_path("utf_tuples.ag")});
  require(out == agtest::read_fixture("utf_time_index.golden"), "differs from golden");
  require(postings_by_heading(out) ==
              postings_by_heading(agtest::read_fixture("utf_time_index.paper.txt")),
          "interval multisets differ from the printed block");
  auto idx = ag::TimeLocalIndex::build(ag::parse(agtest::read_fixture("utf_tuples.ag")));
  std::vector<std::string> bounds;
  for (const auto& iv : idx.intervals()) bounds.push_back(iv.lo.str());
  if (!idx.intervals().empty()) bounds.push_back(idx.intervals().back().hi.str());
  require(bounds == std::vector<std::string>{"2348.81", "2391.11", "2391.29", "2391.60",
                                             "2439.82"},
          "interval boundaries");
}

void golden_type_index() {
  auto out = cli({"index", "--kind", "type", agtest::fixture_path("utf_tuples.ag")});
  require(out == agtest::read_fixture("utf_type_index.golden"), "differs from golden");
  auto idx = ag::TypeLocalIndex::build(ag::parse(agtest::read_fixture("utf_tuples.ag")));
  std::vector<std::string> w;
  for (auto a : idx.arcs_of_type("W")) w.push_back(idx.graph().arcs()[a].label.content());
  require(w == std::vector<std::string>{"country", "i", "think", "this", "well"}, "W order");
}

void hierarchy_index() {
  auto g = ag::parse(agtest::read_fixture("utf_tuples_elided.ag"));
  auto order = ag::TypeOrder::parse("speaker > W\nspkrtype > W\n");
  auto h = ag::HierarchyIndex::build(g, order);
  std::map<std::size_t, std::multiset<std::string>> parents;
  for (const auto& e : h.entries()) {
    for (auto c : e.children) {
      require(ag::s_includes(g, e.arc, c), "child not s-included");
      parents[c].insert(g.arcs()[e.arc].label.type());
    }
  }
  std::size_t words = 0;
  for (std::size_t a = 0; a < g.arc_count(); ++a) {
    if (g.arcs()[a].label.type() != "W") continue;
    ++words;
    require(parents[a] == std::multiset<std::string>{"speaker", "spkrtype"},
            "parents of " + g.arcs()[a].label.str());
    // Independently: exactly one arc of each higher type s-includes it.
    for (const char* type : {"speaker", "spkrtype"}) {
      int n = 0;
      for (std::size_t p = 0; p < g.arc_count(); ++p) {
        if (g.arcs()[p].label.type() == type && ag::s_includes(g, p, a)) ++n;
      }
      require(n == 1, std::string(type) + " count for " + g.arcs()[a].label.str());
    }
  }
  require(words == 5, "W arcs " + std::to_string(words));
}

void relation_oracles() {
  std::mt19937_64 rng(5005);
  for (int round = 0; round < 500; ++round) {
    auto g = AnnotationGraph::build(agtest::random_parts(rng));
    require(g.node_count() <= 12, "graph too large");
    auto oracle = agtest::precedence_oracle(g);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      for (std::size_t j = 0; j < g.node_count(); ++j) {
        require(ag::precedes(g, i, j) == (oracle[i][j] != 0),
                "precedes mismatch in round " + std::to_string(round));
      }
    }
    for (std::size_t a = 0; a < g.arc_count(); ++a) {
      const ag::TimeRef* lo = agtest::glb_oracle(g, a);
      const ag::TimeRef* hi = agtest::lub_oracle(g, a);
      auto got_lo = ag::glb(g, g.arcs()[a]);
      auto got_hi = ag::lub(g, g.arcs()[a]);
      bool ok = (lo != nullptr) == got_lo.has_value() &&
                (hi != nullptr) == got_hi.has_value() && (!lo || *lo == *got_lo) &&
                (!hi || *hi == *got_hi);
      require(ok, "glb/lub mismatch in round " + std::to_string(round));
    }
  }
}

void algebra_closure() {
  std::mt19937_64 rng(6006);
  ag::StructureOptions general{.required = AnchorClass::General};
  int built = 0;
  for (int round = 0; round < 500; ++round) {
    // Shared node ids, so the pairs overlap and sometimes conflict.
    auto a = AnnotationGraph::build(agtest::random_parts(rng));
    auto b = AnnotationGraph::build(agtest::random_parts(rng));
    using Op = AnnotationGraph (*)(const AnnotationGraph&, const AnnotationGraph&);
    for (Op op : {Op(&ag::unite), Op(&ag::intersect), Op(&ag::relative_complement)}) {
      try {
        auto r = op(a, b);
        require(ag::validate_structure(r, general).errors() == 0,
                "invalid result in round " + std::to_string(round));
        ++built;
      } catch (const ag::AnchorConflict&) {
      } catch (const ag::CycleError&) {
      } catch (const ag::OrderViolation&) {
      }
    }
  }
  require(built > 500, "too few successful operations: " + std::to_string(built));

  auto g1 = ag::parse("<1/0> A/x <2/>\n<2/> A/y <3/5>\n");
  auto g2 = ag::parse("<1/0> A/x <2/>\n<2/> A/z <4/7>\n");
  require(ag::classify_anchoring(g1) == AnchorClass::Anchored, "g1 not Anchored");
  require(ag::classify_anchoring(g2) == AnchorClass::Anchored, "g2 not Anchored");
  require(ag::classify_anchoring(ag::intersect(g1, g2)) == AnchorClass::General,
          "intersection not General");
}

void timit_import() {
  auto g = ag::import_timit(imp("sa1.wrd"), imp("sa1.phn")).graph;
  require(ag::classify_anchoring(g) == AnchorClass::TotallyAnchored, "not TotallyAnchored");
  require(of_type(g, "W").size() == 11, "W count");
  require(of_type(g, "P").size() == 10, "P count");
  const Arc& she = only(g, "W", "she");
  auto n = *g.find(she.dst);
  require(g.time(n) && *g.time(n) == ag::TimeRef::ratio(5200, 16000), "she ends at 0.325");
  require(g.incoming(n).size() + g.outgoing(n).size() == 4, "node at 0.325 shares 4 arcs");
}

void component_structure() {
  auto chat = ag::import_chat(imp("two_turns_gap.cha")).graph;
  require(ag::component_count(chat) == 2, "CHAT components");
  auto utf = ag::import_utf(imp("hub4_utf.utf")).graph;
  require(ag::component_count(utf) == 2, "UTF components");

  // Gloria's words that start before country ends must share an interval
  // with it. Checked on the imported turn and on the tuple block.
  auto check = [](const AnnotationGraph& g, const std::string& gloria) {
    auto idx = ag::TimeLocalIndex::build(g);
    const Arc& country = only(g, "W", "country");
    auto end = *ag::lub(g, country);
    auto overlapping = idx.overlapping_arcs(country);
    const Arc& speaker = only(g, "speaker", gloria);
    int seen = 0;
    for (const Arc& w : of_type(g, "W")) {
      if (!ag::s_includes(g, speaker, w)) continue;
      auto lo = ag::glb(g, w);
      if (!lo || *lo >= end) continue;
      ++seen;
      require(overlapping.count(w) == 1, w.label.str() + " does not overlap W/country");
    }
    require(seen == 2, "overlap words " + std::to_string(seen));
  };
  check(utf, "Gloria_Allred");
  check(ag::parse(agtest::read_fixture("utf_tuples_elided.ag")), "Gloria-Allred");
}

void lacito_import() {
  auto g = ag::import_lacito(imp("hayu.xml")).graph;
  std::set<std::string> spelled;
  for (const auto& [n, t] : g.anchors()) spelled.insert(t.str());
  require(spelled == std::set<std::string>{"0.0000", "5.5467"}, "anchor times");
  require(of_type(g, "W").size() == 6, "W count");
  require(of_type(g, "M").size() == 6, "M count");
  require(of_type(g, "T").size() == 1, "T count");
  require(g.arc_count() == 13, "arc count");
  require(ag::classify_anchoring(g) == AnchorClass::Anchored, "not exactly Anchored");
}

void round_trip_and_merge() {
  std::mt19937_64 rng(10010);
  for (int i = 0; i < 500; ++i) {
    auto g1 = AnnotationGraph::build(agtest::random_parts(rng));
    auto g2 = AnnotationGraph::build(agtest::random_parts(rng));
    require(ag::parse(ag::serialize(g1)) == g1, "round trip " + std::to_string(i));
    require(ag::apply(ag::delta(g1, g2), g1) == g2, "delta " + std::to_string(i));
  }
  auto merged = [](std::vector<std::string> texts) {
    return [texts] { return ag::merge(texts); };
  };
  const char* prefixes[] = {"n", "m"};
  for (int i = 0; i < 200; ++i) {
    std::string t[3];
    for (auto& s : t) {
      agtest::RandomGraphOptions o;
      o.id_prefix = prefixes[rng() % 2];
      s = ag::serialize(AnnotationGraph::build(agtest::random_parts(rng, o)));
    }
    std::string idx = " in triple " + std::to_string(i);
    require(outcome(merged({t[0], t[1]})) == outcome(merged({t[1], t[0]})),
            "not commutative" + idx);
    require(outcome(merged({t[0], t[0]})) == outcome(merged({t[0]})), "not idempotent" + idx);
    auto pair = [](const std::string& x, const std::string& y) {
      return ag::serialize(ag::merge(std::vector{x, y}));
    };
    auto l = outcome([&] { return ag::merge(std::vector{pair(t[0], t[1]), t[2]}); });
    auto r = outcome([&] { return ag::merge(std::vector{t[0], pair(t[1], t[2])}); });
    auto flat = outcome(merged({t[0], t[1], t[2]}));
    // A failing inner merge fails both groupings, possibly with different
    // errors; success on one side needs the same graph on the other.
    bool ok = l.starts_with("ok") || r.starts_with("ok") ? l == r && l == flat
                                                          : !flat.starts_with("ok");
    require(ok, "not associative" + idx);
  }
}

void query_equivalence() {
  std::mt19937_64 rng(11011);
  for (const auto& [name, g] : agtest::fixture_graphs()) {
    auto qi = ag::QueryIndex::build(g);
    for (int i = 0; i < 100; ++i) {
      auto p = agtest::random_predicate(rng, g);
      auto naive = outcome([&] { return ag::select(g, p); });
      auto fast = outcome([&] { return ag::select(qi, p); });
      require(naive == fast, name + ": " + p.str());
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "golden encoding", 1, golden_encoding},
      {2, "golden time-local index", 1, golden_time_index},
      {3, "golden type-local index", 1, golden_type_index},
      {4, "hierarchy index dominance", 1, hierarchy_index},
      {5, "relation oracles", 30, relation_oracles},
      {6, "algebra closure", 30, algebra_closure},
      {7, "TIMIT import", 1, timit_import},
      {8, "CHAT/UTF component structure", 1, component_structure},
      {9, "LACITO import", 1, lacito_import},
      {10, "round-trip, delta and merge", 60, round_trip_and_merge},
      {11, "query index equivalence", 30, query_equivalence},
  };
  bool all = true;
  for (const auto& c : criteria) {
    std::string why;
    auto start = Clock::now();
    try {
      c.body();
    } catch (const Failure& f) {
      why = f.why;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (why.empty() && secs >= c.limit_seconds) {
      why = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds);
    }
    all = all && why.empty();
    std::ostringstream line;
    line.precision(3);
    line << std::fixed << (why.empty() ? "PASS" : "FAIL") << " " << c.number << " " << c.name
         << " (" << secs << " s)";
    if (!why.empty()) line << ": " << why;
    std::cout << line.str() << "\n";
  }
  std::cout << (all ? "PASS" : "FAIL")
            << " 12 worked examples and property suites (criteria 1-11)\n";
  return all ? 0 : 1;
}
