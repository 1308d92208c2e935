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

#ifndef TACWF_BOUND_HPP_
#define TACWF_BOUND_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tacwf {

using Rational = boost::rational<std::int64_t>;

/// An exact time value: a rational number of time units, or +inf / -inf.
///
/// Arithmetic never rounds. Adding a finite value to an infinity keeps the
/// infinity; adding +inf to -inf is a logic error and throws.
class Bound {
 public:
  enum class Kind : std::uint8_t { kNegInf, kFinite, kPosInf };

  Bound() = default;
  Bound(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Bound(Rational v) : value_(v) {}      // NOLINT(google-explicit-constructor)
  Bound(std::int64_t num, std::int64_t den) : value_(num, den) {}

  static Bound pos_inf() { return Bound(Kind::kPosInf); }
  static Bound neg_inf() { return Bound(Kind::kNegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  bool is_neg_inf() const { return kind_ == Kind::kNegInf; }
  bool is_integer() const { return is_finite() && value_.denominator() == 1; }

  /// Finite value; throws std::logic_error on an infinity.
  const Rational& value() const;

  Bound operator-() const;
  Bound& operator+=(const Bound& rhs);
  Bound& operator-=(const Bound& rhs) { return *this += -rhs; }
  friend Bound operator+(Bound lhs, const Bound& rhs) { return lhs += rhs; }
  friend Bound operator-(Bound lhs, const Bound& rhs) { return lhs -= rhs; }
  Bound operator*(std::int64_t k) const;

  friend bool operator==(const Bound& a, const Bound& b);
  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

  /// "inf", "-inf", "7" or "15/2".
  std::string to_string() const;

  /// Accepts "inf", "+inf", "-inf", "∞", integers, "p/q" and decimals like "2.5".
  static Bound parse(std::string_view text);

  /// Largest integer not greater than a finite value.
  std::int64_t floor() const;
  std::int64_t ceil() const;

 private:
  explicit Bound(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kFinite;
  Rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const Bound& b);

inline Bound min(const Bound& a, const Bound& b) { return b < a ? b : a; }
inline Bound max(const Bound& a, const Bound& b) { return a < b ? b : a; }

}  // namespace tacwf

#endif  // TACWF_BOUND_HPP_
