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

#include "ag/time_ref.hpp"

#include <utility>

#include "ag/errors.hpp"

namespace ag {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

TimeRef::Integer parse_integer(std::string_view s) {
  TimeRef::Integer v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

TimeRef::TimeRef(Rational value) : value_(std::move(value)) {
  if (value_ < 0) throw InvalidValue("negative time: " + value_.str());
}

TimeRef TimeRef::parse(std::string_view text) {
  TimeRef t;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InvalidValue("malformed time: " + std::string(text));
    }
    Integer d = parse_integer(den);
    if (d == 0) throw InvalidValue("zero denominator: " + std::string(text));
    t.value_ = Rational(parse_integer(num), d);
  } else {
    auto dot = text.find('.');
    auto whole = text.substr(0, dot);
    std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (!all_digits(whole) ||
        (dot != std::string_view::npos && !all_digits(frac))) {
      throw InvalidValue("malformed time: " + std::string(text));
    }
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer digits = parse_integer(whole) * scale + parse_integer(frac);
    t.value_ = Rational(digits, scale);
  }
  t.source_ = std::string(text);
  return t;
}

TimeRef TimeRef::ratio(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw InvalidValue("zero denominator");
  return TimeRef(Rational(numerator, denominator));
}

std::string TimeRef::canonical() const {
  Integer num = boost::multiprecision::numerator(value_);
  Integer den = boost::multiprecision::denominator(value_);
  Integer rest = den;
  unsigned twos = 0;
  unsigned fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  unsigned places = twos > fives ? twos : fives;
  Integer scale = 1;
  for (unsigned i = 0; i < places; ++i) scale *= 10;
  Integer scaled = num * (scale / den);
  std::string out = Integer(scaled / scale).str();
  if (places > 0) {
    std::string frac = Integer(scaled % scale).str();
    out += "." + std::string(places - frac.size(), '0') + frac;
  }
  return out;
}

}  // namespace ag
