// Copyright 2026 The tacwf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tacwf/bound.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace tacwf {
namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a time value: '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

const Rational& Bound::value() const {
  if (!is_finite()) throw std::logic_error("value() on infinite bound");
  return value_;
}

Bound Bound::operator-() const {
  switch (kind_) {
    case Kind::kPosInf:
      return neg_inf();
    case Kind::kNegInf:
      return pos_inf();
    case Kind::kFinite:
      break;
  }
  return Bound(-value_);
}

Bound& Bound::operator+=(const Bound& rhs) {
  if (is_finite() && rhs.is_finite()) {
    value_ += rhs.value_;
    return *this;
  }
  if ((is_pos_inf() && rhs.is_neg_inf()) || (is_neg_inf() && rhs.is_pos_inf())) {
    throw std::logic_error("inf + -inf is undefined");
  }
  if (is_finite()) {
    kind_ = rhs.kind_;
    value_ = 0;
  }
  return *this;
}

Bound Bound::operator*(std::int64_t k) const {
  if (is_finite()) return Bound(value_ * k);
  if (k == 0) throw std::logic_error("0 * inf is undefined");
  return k > 0 ? *this : -*this;
}

bool operator==(const Bound& a, const Bound& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (!a.is_finite()) return std::strong_ordering::equal;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Bound::to_string() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  std::string s = std::to_string(value_.numerator());
  if (value_.denominator() != 1) s += "/" + std::to_string(value_.denominator());
  return s;
}

Bound Bound::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "+inf" || s == "\xE2\x88\x9E" || s == "infinity") return pos_inf();
  if (s == "-inf" || s == "-\xE2\x88\x9E" || s == "-infinity") return neg_inf();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(trim(s.substr(0, slash)), text);
    std::int64_t den = parse_int(trim(s.substr(slash + 1)), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Bound(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    bool negative = !ip.empty() && ip.front() == '-';
    if (negative) ip.remove_prefix(1);
    if (fp.empty() || fp.size() > 15) {
      throw std::invalid_argument("not a time value: '" + std::string(text) + "'");
    }
    std::int64_t whole = ip.empty() ? 0 : parse_int(ip, text);
    std::int64_t frac = parse_int(fp, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rational r(whole * scale + frac, scale);
    return Bound(negative ? -r : r);
  }
  return Bound(parse_int(s, text));
}

std::int64_t Bound::floor() const {
  const Rational& v = value();
  std::int64_t q = v.numerator() / v.denominator();
  if (v.numerator() % v.denominator() != 0 && v.numerator() < 0) --q;
  return q;
}

std::int64_t Bound::ceil() const { return -(-*this).floor(); }

std::ostream& operator<<(std::ostream& os, const Bound& b) { return os << b.to_string(); }

}  // namespace tacwf
