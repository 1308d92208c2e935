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

#ifndef TACWF_PERIODIC_HPP_
#define TACWF_PERIODIC_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tacwf/stn.hpp"

namespace tacwf {

/// Calendars with a fixed number of hours per granule. Weeks start on Monday.
enum class Calendar : std::int64_t { kHours = 1, kDays = 24, kWeeks = 168 };

inline std::int64_t hours_per_granule(Calendar c) { return static_cast<std::int64_t>(c); }
std::string_view to_string(Calendar c);

struct CalendarTerm {
  bool all = false;
  /// 1-based granule offsets within the enclosing calendar; empty when `all`.
  std::vector<std::int64_t> offsets;
  Calendar calendar = Calendar::kDays;

  friend bool operator==(const CalendarTerm&, const CalendarTerm&) = default;
};

/// sum(O_i . C_i) > r . C_d
struct PeriodicExpression {
  std::vector<CalendarTerm> terms;
  std::int64_t r = 1;
  Calendar duration = Calendar::kHours;

  /// ASCII rendering, e.g. "all.Days + {9}.Hours > 12.Hours".
  std::string to_string() const;
  friend bool operator==(const PeriodicExpression&, const PeriodicExpression&) = default;
};

/// Accepts ASCII ('.', '>') and the symbols U+00B7 and U+25B7.
/// Throws Error(ParseError), Error(FirstTermNotAll) or Error(NonDescendingCalendars).
PeriodicExpression parse_periodic_expression(std::string_view text);

std::int64_t periodicity(const PeriodicExpression& p);
std::int64_t granularity(const PeriodicExpression& p);

/// Starting offsets z of the intervals within one period, shifted by `anchor`
/// (the hour at which the first full period begins). Sorted ascending.
std::vector<std::int64_t> displacement(const PeriodicExpression& p, std::int64_t anchor = 0);

/// Analysis window in hours since 00:00 of 01/01 of the begin date's year.
struct TimeWindow {
  int origin_year = 2015;
  Bound begin{0};
  Bound end{0};

  /// Dates are "dd/mm/yy" or "dd/mm/yy:hh" with hh in 01..24; `end` may be "inf".
  /// A bare begin date means its first hour, a bare end date its last.
  /// Throws Error(ParseError).
  static TimeWindow parse(std::string_view begin, std::string_view end);

  /// Instant of a date on this window's timeline; `as_end` selects the end of the hour.
  Bound instant(std::string_view date, bool as_end) const;

  /// Hours from the origin to the first Monday 00:00 on or after it.
  std::int64_t week_anchor() const;

  /// Anchor for the first calendar of `p`.
  std::int64_t anchor_for(const PeriodicExpression& p) const;
};

struct SpannedInterval {
  std::int64_t period = 0;  // n + 1
  std::int64_t z = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  friend bool operator==(const SpannedInterval&, const SpannedInterval&) = default;
};

/// Intervals [p*n + z - 1, p*n + z - 1 + g] fully inside the window, sorted by lo.
/// Throws Error(EmptyWindow) or Error(UnboundedWindow).
std::vector<SpannedInterval> spanned_intervals(const PeriodicExpression& p, const TimeWindow& w);

PointId interval_start_point(const std::string& prefix, const SpannedInterval& iv);
PointId interval_end_point(const std::string& prefix, const SpannedInterval& iv);

/// One Z -[lo,lo]-> start, start -[g,g]-> end pair per spanned interval.
/// Throws Error(UnboundedWindow) or Error(EmptyWindow).
Stn pt2stn(const PeriodicExpression& p, const TimeWindow& w, const std::string& prefix = "P");

}  // namespace tacwf

#endif  // TACWF_PERIODIC_HPP_
