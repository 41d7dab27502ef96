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
#include <regex>

#include "common.hpp"

namespace ag {

using detail::GraphBuilder;

namespace {

struct Stretch {
  char marker = ' ';  // '*', '+' or ' '
  TimeRef start;
  TimeRef end;
  std::string speaker;
  std::string text;
  std::size_t line = 0;
};

struct Turn {
  std::string speaker;
  NodeId first;
  NodeId last;
  TimeRef end;
  std::size_t last_stretch = 0;
};

std::vector<Stretch> read_stretches(std::string_view text) {
  static const std::regex header(
      R"(^\s*([*+])?\s*(\d+(\.\d+)?)\s+(\d+(\.\d+)?)\s+(\w+):(.*)$)");
  std::vector<Stretch> out;
  for (const auto& line : detail::split_lines(text)) {
    std::string s(line.text);
    std::smatch m;
    if (std::regex_match(s, m, header)) {
      Stretch st;
      if (m[1].matched) st.marker = m[1].str()[0];
      st.start = detail::to_time(m[2].str(), line.number);
      st.end = detail::to_time(m[4].str(), line.number);
      st.speaker = m[6];
      st.text = m[7];
      st.line = line.number;
      if (st.end < st.start) {
        throw NonMonotonicSpan(line.number, 1, "stretch ends before it starts");
      }
      out.push_back(std::move(st));
    } else if (!detail::trim(line.text).empty()) {
      if (out.empty()) {
        throw SyntaxError(line.number, 1, "text before the first time-stamped stretch");
      }
      out.back().text += " ";
      out.back().text += s;
    }
  }
  return out;
}

}  // namespace

ImportedGraph import_callhome(std::string_view text, const ImportOptions& opts) {
  auto stretches = read_stretches(text);
  GraphBuilder b(opts);
  const std::string w_type = b.type_for("W", "W");
  const std::string gap_type = b.type_for("gap", "gap");
  const std::string speaker_type = b.type_for("speaker", "speaker");

  std::vector<Turn> turns;
  // Index into `turns` of each speaker's latest turn.
  std::map<std::string, std::size_t> latest;

  auto mergeable = [&](const Turn& t, std::size_t at) {
    if (stretches[at].start < t.end) return false;
    for (std::size_t k = t.last_stretch + 1; k < at; ++k) {
      if (stretches[k].marker != '*') return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < stretches.size(); ++i) {
    const Stretch& s = stretches[i];
    Turn* turn = nullptr;
    if (opts.merge_same_speaker) {
      auto it = latest.find(s.speaker);
      if (it != latest.end() && mergeable(turns[it->second], i)) turn = &turns[it->second];
    }

    const bool abuts = turn && turn->end == s.start;
    NodeId start = abuts ? turn->last : b.fresh();
    if (!abuts) b.anchor(start, s.start, s.line);
    if (turn && !abuts) b.arc(turn->last, gap_type, "", start);
    NodeId end = b.fresh();
    b.anchor(end, s.end, s.line);

    auto words = detail::split_ws(s.text);
    if (words.empty()) {
      b.arc(start, gap_type, "", end);
    }
    NodeId from = start;
    for (std::size_t k = 0; k < words.size(); ++k) {
      NodeId to = k + 1 == words.size() ? end : b.fresh();
      b.arc(from, w_type, std::string(words[k]), to);
      from = to;
    }

    if (turn) {
      turn->last = end;
      turn->end = s.end;
      turn->last_stretch = i;
    } else {
      latest[s.speaker] = turns.size();
      turns.push_back(Turn{s.speaker, start, end, s.end, i});
    }
  }
  for (const auto& t : turns) b.arc(t.first, speaker_type, t.speaker, t.last);
  return b.finish();
}

}  // namespace ag
