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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ag/graph.hpp"
#include "ag/query.hpp"

namespace agtest {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

struct RandomGraphOptions {
  int max_nodes = 12;
  int max_arcs = 18;
  double anchor_probability = 0.5;
  // Node ids are drawn from `id_prefix` + number, so two generators with
  // different prefixes produce disjoint node sets.
  std::string id_prefix = "n";
  int types = 3;
};

// A random valid graph: arcs go forward in a hidden node order, and times
// are non-decreasing in that order (with repeats, so instants occur).
ag::GraphParts random_parts(std::mt19937_64& rng,
                            const RandomGraphOptions& opts = {});

using Matrix = std::vector<std::vector<char>>;

// Boolean matrix transitive closure by repeated squaring, independent of the
// library's reachability code.
Matrix closure(Matrix m);

// Adjacency matrix of g's arcs over g's node indices.
Matrix adjacency(const ag::AnnotationGraph& g);

// Closure of (s-precedes ∪ t-precedes) computed from scratch.
Matrix precedence_oracle(const ag::AnnotationGraph& g);

// Brute-force glb/lub of an arc: max/min over anchored nodes by exhaustive
// reachability. Null when no anchored node qualifies.
const ag::TimeRef* glb_oracle(const ag::AnnotationGraph& g, std::size_t arc);
const ag::TimeRef* lub_oracle(const ag::AnnotationGraph& g, std::size_t arc);

// Every graph the test corpus provides: the tuple fixtures and each
// importer's fixture (CALLHOME both unmerged and merged), keyed by name.
std::vector<std::pair<std::string, ag::AnnotationGraph>> fixture_graphs();

// A random predicate over the labels, contents and arcs of g, nested at
// most `depth` combinators deep. Leaves include every relation kind.
ag::Predicate random_predicate(std::mt19937_64& rng, const ag::AnnotationGraph& g,
                               int depth = 3);

}  // namespace agtest
