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


#include "ag/type_order.hpp"

#include <sstream>

#include "ag/errors.hpp"

namespace ag {

TypeOrder::TypeOrder(
    const std::vector<std::pair<std::string, std::string>>& higher_lower_pairs)
    : pairs_(higher_lower_pairs) {
  for (const auto& [hi, lo] : pairs_) {
    if (hi == lo) throw InvalidTypeOrder("type ordered below itself: " + hi);
    below_[hi].insert(lo);
  }
  // Warshall-style closure; type sets are small.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [hi, lows] : below_) {
      std::set<std::string> add;
      for (const auto& lo : lows) {
        auto it = below_.find(lo);
        if (it == below_.end()) continue;
        for (const auto& x : it->second) {
          if (!lows.count(x)) add.insert(x);
        }
      }
      if (!add.empty()) {
        lows.insert(add.begin(), add.end());
        changed = true;
      }
    }
  }
  for (const auto& [hi, lows] : below_) {
    if (lows.count(hi)) throw InvalidTypeOrder("cyclic type order through " + hi);
  }
}

TypeOrder TypeOrder::parse(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    // `A > B > C` declares A > B and B > C.
    std::vector<std::string> chain;
    std::istringstream words(line);
    std::string w;
    bool want_type = true;
    while (words >> w) {
      if (want_type == (w == ">")) {
        throw SyntaxError(lineno, 0, "expected 'HIGH > LOW'");
      }
      if (want_type) chain.push_back(w);
      want_type = !want_type;
    }
    if (want_type || chain.size() < 2) {
      throw SyntaxError(lineno, 0, "expected 'HIGH > LOW'");
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      pairs.emplace_back(chain[i], chain[i + 1]);
    }
  }
  return TypeOrder(pairs);
}

bool TypeOrder::higher(const std::string& a, const std::string& b) const {
  auto it = below_.find(a);
  return it != below_.end() && it->second.count(b) > 0;
}

}  // namespace ag
