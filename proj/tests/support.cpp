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


#include "support.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ag/encoding.hpp"
#include "ag/import.hpp"

namespace agtest {

std::string fixture_path(const std::string& name) {
  return std::string(AG_FIXTURES) + "/" + name;
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ag::GraphParts random_parts(std::mt19937_64& rng,
                            const RandomGraphOptions& opts) {
  std::uniform_int_distribution<int> node_count(1, opts.max_nodes);
  int n = node_count(rng);
  // Hidden order: position i holds node order[i].
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(opts.id_prefix + std::to_string(i));

  ag::GraphParts parts;
  std::bernoulli_distribution anchored(opts.anchor_probability);
  std::uniform_int_distribution<int> step(0, 2);
  int t = 0;
  for (int pos = 0; pos < n; ++pos) {
    t += step(rng);
    if (anchored(rng)) {
      // Halves exercise non-integer times.
      parts.anchors.emplace(ag::NodeId(ids[order[pos]]),
                            ag::TimeRef::ratio(t, 2));
    }
  }
  if (n >= 2) {
    std::uniform_int_distribution<int> arc_count(0, opts.max_arcs);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<int> type(0, opts.types - 1);
    std::uniform_int_distribution<int> content(0, 3);
    int m = arc_count(rng);
    for (int k = 0; k < m; ++k) {
      int a = pick(rng);
      int b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      parts.arcs.insert(ag::Arc{
          ag::NodeId(ids[order[a]]),
          ag::Label(std::string(1, static_cast<char>('A' + type(rng))),
                    "c" + std::to_string(content(rng))),
          ag::NodeId(ids[order[b]])});
    }
  }
  // The tuple format cannot carry anchors of isolated nodes.
  std::set<ag::NodeId> used;
  for (const auto& a : parts.arcs) {
    used.insert(a.src);
    used.insert(a.dst);
  }
  std::erase_if(parts.anchors,
                [&](const auto& kv) { return !used.count(kv.first); });
  return parts;
}

Matrix closure(Matrix m) {
  const std::size_t n = m.size();
  // m := m ∪ m·m until stable.
  while (true) {
    Matrix next = m;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!m[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (m[k][j]) next[i][j] = 1;
        }
      }
    }
    if (next == m) return m;
    m = std::move(next);
  }
}

Matrix adjacency(const ag::AnnotationGraph& g) {
  Matrix m(g.node_count(), std::vector<char>(g.node_count(), 0));
  for (std::size_t a = 0; a < g.arc_count(); ++a) m[g.source(a)][g.target(a)] = 1;
  return m;
}

Matrix precedence_oracle(const ag::AnnotationGraph& g) {
  Matrix m = adjacency(g);
  const std::size_t n = g.node_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto* ti = g.time(i);
      const auto* tj = g.time(j);
      if (ti && tj && *ti < *tj) m[i][j] = 1;
    }
  }
  return closure(std::move(m));
}

namespace {

const ag::TimeRef* bound(const ag::AnnotationGraph& g, std::size_t node,
                         bool before) {
  Matrix reach = closure(adjacency(g));
  const ag::TimeRef* best = nullptr;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto* t = g.time(n);
    if (!t) continue;
    bool related = n == node || (before ? reach[n][node] : reach[node][n]);
    if (!related) continue;
    if (!best || (before ? *best < *t : *t < *best)) best = t;
  }
  return best;
}

}  // namespace

const ag::TimeRef* glb_oracle(const ag::AnnotationGraph& g, std::size_t arc) {
  return bound(g, g.source(arc), true);
}

const ag::TimeRef* lub_oracle(const ag::AnnotationGraph& g, std::size_t arc) {
  return bound(g, g.target(arc), false);
}

std::vector<std::pair<std::string, ag::AnnotationGraph>> fixture_graphs() {
  auto imp = [](const std::string& name) { return read_fixture("import/" + name); };
  ag::ImportOptions merged;
  merged.merge_same_speaker = true;
  std::vector<std::pair<std::string, ag::AnnotationGraph>> out;
  for (const char* name : {"utf_tuples.ag", "utf_tuples_elided.ag", "gestural.ag"}) {
    out.emplace_back(name, ag::parse(read_fixture(name)));
  }
  out.emplace_back("timit", ag::import_timit(imp("sa1.wrd"), imp("sa1.phn")).graph);
  out.emplace_back("partitur", ag::import_partitur(imp("verbmobil.par")).graph);
  out.emplace_back("chat", ag::import_chat(imp("boys73.cha")).graph);
  out.emplace_back("chat-snd", ag::import_chat(imp("boys73_snd.cha")).graph);
  out.emplace_back("chat-gap", ag::import_chat(imp("two_turns_gap.cha")).graph);
  out.emplace_back("lacito", ag::import_lacito(imp("hayu.xml")).graph);
  out.emplace_back("ldc-bn", ag::import_ldc_bn(imp("hub4.sgml")).graph);
  out.emplace_back("callhome", ag::import_callhome(imp("callhome.txt")).graph);
  out.emplace_back("callhome-merged", ag::import_callhome(imp("callhome.txt"), merged).graph);
  out.emplace_back("utf", ag::import_utf(imp("hub4_utf.utf")).graph);
  out.emplace_back("emu",
                   ag::import_emu(imp("price_range.hier"), {imp("price_range.lab")}).graph);
  return out;
}

namespace {

template <typename T>
const T& pick(std::mt19937_64& rng, std::span<const T> v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

ag::Predicate random_leaf(std::mt19937_64& rng, const ag::AnnotationGraph& g) {
  const auto& arcs = g.arcs();
  if (arcs.empty()) return ag::Predicate::all();
  const ag::Arc& a = pick<ag::Arc>(rng, arcs);
  auto ref = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? ag::ArcRef::of(a.label)
                                                                : ag::ArcRef::of(a);
  static const std::vector<ag::InclusionMode> inclusion{
      ag::InclusionMode::Structural, ag::InclusionMode::Temporal, ag::InclusionMode::Either,
      ag::InclusionMode::General};
  static const std::vector<ag::PrecedenceMode> precedence{
      ag::PrecedenceMode::Structural, ag::PrecedenceMode::Temporal,
      ag::PrecedenceMode::General};
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0:
      return ag::Predicate::all();
    case 1:
      return ag::Predicate::label_type(a.label.type());
    case 2: {
      const std::string& c = a.label.content();
      if (c.empty()) return ag::Predicate::label_content("^$");
      if (std::isalnum(static_cast<unsigned char>(c[0]))) {
        return ag::Predicate::label_content("^" + c.substr(0, 1));
      }
      char hex[8];
      std::snprintf(hex, sizeof hex, "^\\x%02X", static_cast<unsigned char>(c[0]));
      return ag::Predicate::label_content(hex);
    }
    case 3:
      return ag::Predicate::overlaps(ref);
    case 4:
      return ag::Predicate::includes(ref, pick<ag::InclusionMode>(rng, inclusion));
    case 5:
    case 6:
      return ag::Predicate::precedes(ref, pick<ag::PrecedenceMode>(rng, precedence),
                                     std::uniform_int_distribution<int>(0, 1)(rng) == 1);
    default:
      return ag::Predicate::in_class(a.label.type(), a.label.content());
  }
}

}  // namespace

ag::Predicate random_predicate(std::mt19937_64& rng, const ag::AnnotationGraph& g, int depth) {
  int choice = depth <= 0 ? 0 : std::uniform_int_distribution<int>(0, 5)(rng);
  switch (choice) {
    case 3:
      return ag::Predicate::both(random_predicate(rng, g, depth - 1),
                                 random_predicate(rng, g, depth - 1));
    case 4:
      return ag::Predicate::either(random_predicate(rng, g, depth - 1),
                                   random_predicate(rng, g, depth - 1));
    case 5:
      return ag::Predicate::negate(random_predicate(rng, g, depth - 1));
    default:
      return random_leaf(rng, g);
  }
}

}  // namespace agtest
