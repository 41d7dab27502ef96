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

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ag {

// A non-negative time in seconds, held exactly.
//
// Values read from text remember their source spelling so that "2391.60"
// is written back as "2391.60"; comparison is always by numeric value, so
// "2.5" == "2.50". Values computed by division (sample counts over a
// sampling rate) have no source spelling and print in canonical form.
class TimeRef {
 public:
  using Integer = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  TimeRef() = default;
  explicit TimeRef(Rational value);

  // Accepts "123", "123.456" and the exact-fraction form "1/3".
  static TimeRef parse(std::string_view text);
  static TimeRef ratio(const Integer& numerator, const Integer& denominator);
  static TimeRef seconds(long long whole) { return TimeRef(Rational(whole)); }

  const Rational& value() const { return value_; }

  // Shortest decimal spelling with the same value, or "p/q" when the value
  // has no terminating decimal expansion.
  std::string canonical() const;

  // Source spelling if there is one, else canonical().
  std::string str() const { return source_.empty() ? canonical() : source_; }
  std::string str(bool preserve_source) const {
    return preserve_source ? str() : canonical();
  }
  bool has_source_form() const { return !source_.empty(); }

  double to_double() const { return value_.convert_to<double>(); }

  friend bool operator==(const TimeRef& a, const TimeRef& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const TimeRef& a, const TimeRef& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_;
  std::string source_;
};

}  // namespace ag
