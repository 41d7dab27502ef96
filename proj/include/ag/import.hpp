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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ag/graph.hpp"

namespace ag {

struct ImportOptions {
  // Samples per second for TIMIT and Partitur sample offsets.
  long long sample_rate = 16000;
  // CALLHOME: join stretches of one speaker into a single turn.
  bool merge_same_speaker = false;
  // Source tier or level name -> label type; overrides the defaults.
  std::map<std::string, std::string> type_prefix_map;
  // Prepended to every generated node id.
  std::string node_prefix;
};

// Importers also return source material that is not part of the graph,
// such as CHAT header lines.
struct ImportedGraph {
  AnnotationGraph graph;
  std::vector<std::string> comments;
};

enum class SourceFormat { Timit, Partitur, Chat, Lacito, LdcBn, Callhome, Utf, Emu };

std::string_view to_string(SourceFormat f);
// Accepts the CLI names: timit, partitur, chat, lacito, ldc-bn, callhome,
// utf, emu.
std::optional<SourceFormat> parse_source_format(std::string_view name);

// .wrd lines become W/ arcs and .phn lines P/ arcs; nodes are shared by
// sample value. Throws SyntaxError, NonMonotonicSpan.
ImportedGraph import_timit(std::string_view wrd_text, std::string_view phn_text,
                           const ImportOptions& opts = {});

// KAN, ORT, TRL, DAS and MAU tiers as K/, O/, TRL/, D/ and M/ arcs.
// Throws SyntaxError, DanglingAnchor.
ImportedGraph import_partitur(std::string_view text, const ImportOptions& opts = {});

// Throws SyntaxError, OrphanDependentTier.
ImportedGraph import_chat(std::string_view text, const ImportOptions& opts = {});

// Throws XmlError, AlignmentMismatch.
ImportedGraph import_lacito(std::string_view xml_text, const ImportOptions& opts = {});

// Throws SyntaxError, NonMonotonicSync.
ImportedGraph import_ldc_bn(std::string_view text, const ImportOptions& opts = {});

// Throws SyntaxError.
ImportedGraph import_callhome(std::string_view text, const ImportOptions& opts = {});

// Throws SyntaxError, UnbalancedTag.
ImportedGraph import_utf(std::string_view text, const ImportOptions& opts = {});

// `hierarchy_text` holds the level declarations, the per-level element
// listings and the dominance lines; `label_texts` the xwaves label files,
// one per timed level, in declaration order. Throws SyntaxError,
// DanglingDominance.
ImportedGraph import_emu(std::string_view hierarchy_text,
                         const std::vector<std::string>& label_texts,
                         const ImportOptions& opts = {});

}  // namespace ag
