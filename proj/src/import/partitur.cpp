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


#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"

namespace ag {

using detail::GraphBuilder;

namespace {

// Keys of the BAS Partitur file header; their values are ignored.
const std::set<std::string_view>& header_keys() {
  static const std::set<std::string_view> keys = {
      "LHD", "REP", "SNB", "SAM", "SBF", "SSB", "NCH", "SPN", "FIL", "FRM",
      "TYP", "DBN", "VOL", "DIR", "SRC", "BEG", "END", "RED", "RET", "RCC",
      "CMT", "SPI", "PCF", "PCN", "EXP", "SYS", "DAT", "SPA", "MAO", "GPO",
      "SAO", "LBD", "LBR", "ORA"};
  return keys;
}

struct Segment {
  long long start;
  long long end;  // exclusive
  std::string label;
};

struct Word {
  std::string kan;
  std::size_t line = 0;
  std::vector<std::string> ort;
  std::vector<std::string> trl;
  std::vector<Segment> mau;
};

struct DialogAct {
  std::vector<long long> words;
  std::string label;
  std::size_t line;
};

std::string rest_after(std::string_view text, std::size_t fields) {
  // The label is everything after the first `fields` blank-separated fields.
  std::size_t i = 0;
  for (std::size_t f = 0; f < fields; ++f) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
  }
  return std::string(detail::trim(text.substr(i)));
}

}  // namespace

ImportedGraph import_partitur(std::string_view text, const ImportOptions& opts) {
  if (opts.sample_rate <= 0) throw InvalidValue("sample rate must be positive");
  std::map<long long, Word> words;
  std::vector<DialogAct> acts;
  std::vector<Segment> unlinked;
  struct Pending {
    long long k;
    std::size_t line;
  };
  std::vector<Pending> references;

  for (const auto& line : detail::split_lines(text)) {
    auto fields = detail::split_ws(line.text);
    if (fields.empty()) continue;
    std::string_view key = fields[0];
    if (key.size() < 2 || key.back() != ':') {
      throw SyntaxError(line.number, 1, "expected a tier key such as 'KAN:'");
    }
    key.remove_suffix(1);
    if (header_keys().count(key)) continue;
    if (key == "KAN" || key == "ORT" || key == "TRL") {
      if (fields.size() < 3) throw SyntaxError(line.number, 1, "expected '<k> <label>'");
      long long k = detail::to_integer(fields[1], line.number);
      std::string label = rest_after(line.text, 2);
      if (key == "KAN") {
        if (words.count(k) && !words[k].kan.empty()) {
          throw SyntaxError(line.number, 1, "duplicate KAN entry " + std::to_string(k));
        }
        words[k].kan = label;
        words[k].line = line.number;
      } else {
        references.push_back({k, line.number});
        (key == "ORT" ? words[k].ort : words[k].trl).push_back(label);
      }
    } else if (key == "DAS") {
      if (fields.size() < 3) throw SyntaxError(line.number, 1, "expected '<k,...> <label>'");
      DialogAct act{{}, rest_after(line.text, 2), line.number};
      std::string_view list = fields[1];
      std::size_t pos = 0;
      while (pos <= list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string_view::npos) comma = list.size();
        long long k = detail::to_integer(list.substr(pos, comma - pos), line.number);
        if (!act.words.empty() && k != act.words.back() + 1) {
          throw SyntaxError(line.number, 1, "DAS anchors are not contiguous");
        }
        act.words.push_back(k);
        references.push_back({k, line.number});
        pos = comma + 1;
      }
      acts.push_back(std::move(act));
    } else if (key == "MAU") {
      if (fields.size() < 5) {
        throw SyntaxError(line.number, 1, "expected '<offset> <duration> <k> <label>'");
      }
      long long offset = detail::to_integer(fields[1], line.number);
      long long duration = detail::to_integer(fields[2], line.number);
      long long k = detail::to_integer(fields[3], line.number);
      if (offset < 0 || duration < 0) {
        throw NonMonotonicSpan(line.number, 1, "negative MAU offset or duration");
      }
      // Durations count the last sample, so the segment ends one past it.
      Segment seg{offset, offset + duration + 1, rest_after(line.text, 4)};
      if (k == -1) {
        unlinked.push_back(std::move(seg));
      } else {
        references.push_back({k, line.number});
        words[k].mau.push_back(std::move(seg));
      }
    } else {
      throw SyntaxError(line.number, 1, "unsupported tier " + std::string(key));
    }
  }
  for (const auto& r : references) {
    auto it = words.find(r.k);
    if (it == words.end() || it->second.line == 0) {
      throw DanglingAnchor(r.line, 1,
                           "reference to word " + std::to_string(r.k) + " not in KAN");
    }
  }

  GraphBuilder b(opts);
  const long long rate = opts.sample_rate;
  std::map<long long, NodeId> by_sample;
  auto node_at = [&](long long sample) {
    auto it = by_sample.find(sample);
    if (it != by_sample.end()) return it->second;
    NodeId n = b.fresh();
    b.anchor(n, TimeRef::ratio(sample, rate));
    by_sample.emplace(sample, n);
    return n;
  };
  const std::string m_type = b.type_for("MAU", "M");
  auto add_segment = [&](const Segment& s) {
    b.arc(node_at(s.start), m_type, s.label, node_at(s.end));
  };

  // Word spans: the extent of the word's MAU segments, or unanchored nodes
  // chained to the neighbouring words.
  std::map<long long, std::pair<NodeId, NodeId>> spans;
  std::optional<NodeId> prev_end;
  for (auto it = words.begin(); it != words.end(); ++it) {
    auto& w = it->second;
    std::sort(w.mau.begin(), w.mau.end(),
              [](const Segment& x, const Segment& y) { return x.start < y.start; });
    if (!w.mau.empty()) {
      for (const auto& s : w.mau) add_segment(s);
      long long lo = w.mau.front().start;
      long long hi = w.mau.front().end;
      for (const auto& s : w.mau) hi = std::max(hi, s.end);
      spans.emplace(it->first, std::make_pair(node_at(lo), node_at(hi)));
    } else {
      NodeId start = prev_end ? *prev_end : b.fresh();
      auto next = std::next(it);
      NodeId end = next != words.end() && !next->second.mau.empty()
                       ? node_at(std::min_element(next->second.mau.begin(),
                                                  next->second.mau.end(),
                                                  [](const Segment& x, const Segment& y) {
                                                    return x.start < y.start;
                                                  })
                                     ->start)
                       : b.fresh();
      spans.emplace(it->first, std::make_pair(start, end));
    }
    prev_end = spans.at(it->first).second;
  }
  for (const auto& s : unlinked) add_segment(s);

  const std::string k_type = b.type_for("KAN", "K");
  const std::string o_type = b.type_for("ORT", "O");
  const std::string t_type = b.type_for("TRL", "TRL");
  const std::string d_type = b.type_for("DAS", "D");
  for (const auto& [k, w] : words) {
    const auto& [start, end] = spans.at(k);
    b.arc(start, k_type, w.kan, end);
    for (const auto& o : w.ort) b.arc(start, o_type, o, end);
    // Several transliteration fragments divide the word span in order.
    NodeId from = start;
    for (std::size_t i = 0; i < w.trl.size(); ++i) {
      NodeId to = i + 1 == w.trl.size() ? end : b.fresh();
      b.arc(from, t_type, w.trl[i], to);
      from = to;
    }
  }
  for (const auto& act : acts) {
    b.arc(spans.at(act.words.front()).first, d_type, act.label,
          spans.at(act.words.back()).second);
  }
  return b.finish();
}

}  // namespace ag
