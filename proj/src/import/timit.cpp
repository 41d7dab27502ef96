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


#include <map>

#include "common.hpp"

namespace ag {

using detail::GraphBuilder;

std::string_view to_string(SourceFormat f) {
  switch (f) {
    case SourceFormat::Timit:
      return "timit";
    case SourceFormat::Partitur:
      return "partitur";
    case SourceFormat::Chat:
      return "chat";
    case SourceFormat::Lacito:
      return "lacito";
    case SourceFormat::LdcBn:
      return "ldc-bn";
    case SourceFormat::Callhome:
      return "callhome";
    case SourceFormat::Utf:
      return "utf";
    case SourceFormat::Emu:
      return "emu";
  }
  return "timit";
}

std::optional<SourceFormat> parse_source_format(std::string_view name) {
  for (auto f : {SourceFormat::Timit, SourceFormat::Partitur, SourceFormat::Chat,
                 SourceFormat::Lacito, SourceFormat::LdcBn, SourceFormat::Callhome,
                 SourceFormat::Utf, SourceFormat::Emu}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

namespace {

void read_segments(std::string_view text, const std::string& type,
                   GraphBuilder& b, std::map<long long, NodeId>& nodes) {
  const long long rate = b.options().sample_rate;
  auto node_at = [&](long long sample) {
    auto it = nodes.find(sample);
    if (it != nodes.end()) return it->second;
    NodeId n = b.fresh();
    b.anchor(n, TimeRef::ratio(sample, rate));
    nodes.emplace(sample, n);
    return n;
  };
  for (const auto& line : detail::split_lines(text)) {
    auto fields = detail::split_ws(line.text);
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      throw SyntaxError(line.number, 1, "expected '<start> <end> <label>'");
    }
    long long start = detail::to_integer(fields[0], line.number, 1);
    long long end = detail::to_integer(fields[1], line.number);
    if (start < 0) throw SyntaxError(line.number, 1, "negative sample offset");
    if (start >= end) {
      throw NonMonotonicSpan(line.number, 1,
                             "segment ends at or before its start");
    }
    b.arc(node_at(start), type, std::string(fields[2]), node_at(end));
  }
}

}  // namespace

ImportedGraph import_timit(std::string_view wrd_text, std::string_view phn_text,
                           const ImportOptions& opts) {
  if (opts.sample_rate <= 0) throw InvalidValue("sample rate must be positive");
  GraphBuilder b(opts);
  std::map<long long, NodeId> nodes;
  read_segments(wrd_text, b.type_for("wrd", "W"), b, nodes);
  read_segments(phn_text, b.type_for("phn", "P"), b, nodes);
  return b.finish();
}

}  // namespace ag
