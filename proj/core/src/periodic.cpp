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

#include "tacwf/periodic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>

#include "tacwf/error.hpp"

namespace tacwf {
namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  bool accept_dot() { return accept(".") || accept("\xC2\xB7") || accept("*"); }
  bool accept_triangle() { return accept(">") || accept("\xE2\x96\xB7"); }

  std::int64_t number() {
    skip_ws();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a calendar name");
    return std::string(s_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParseError,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

Calendar calendar_named(Lexer& lx) {
  std::string w = lx.word();
  std::string lower = w;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "hours" || lower == "hour") return Calendar::kHours;
  if (lower == "days" || lower == "day") return Calendar::kDays;
  if (lower == "weeks" || lower == "week") return Calendar::kWeeks;
  lx.fail("unknown calendar '" + w + "'");
}

std::vector<std::int64_t> offset_set(Lexer& lx) {
  std::vector<std::int64_t> out;
  if (lx.accept("}")) return out;
  do {
    out.push_back(lx.number());
  } while (lx.accept(","));
  if (!lx.accept("}")) lx.fail("expected '}'");
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct DateParts {
  int day = 1;
  int month = 1;
  int year = 2015;
  int hour = 0;  // 0 when absent
};

DateParts parse_date(std::string_view text) {
  auto fail = [&]() -> DateParts {
    throw Error(ErrorCode::kParseError, "bad date '" + std::string(text) + "', expected dd/mm/yy[:hh]");
  };
  DateParts d;
  int* fields[] = {&d.day, &d.month, &d.year, &d.hour};
  const char seps[] = {'/', '/', ':'};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == 3 && pos >= text.size()) break;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), *fields[i]);
    if (ec != std::errc()) return fail();
    pos = static_cast<std::size_t>(ptr - text.data());
    if (i < 3) {
      if (pos >= text.size()) {
        if (i == 2) break;
        return fail();
      }
      if (text[pos] != seps[i]) return fail();
      ++pos;
    }
  }
  if (pos != text.size()) return fail();
  if (d.year < 100) d.year += 2000;
  using namespace std::chrono;
  year_month_day ymd{year{d.year}, month{static_cast<unsigned>(d.month)}, day{static_cast<unsigned>(d.day)}};
  if (!ymd.ok() || d.hour < 0 || d.hour > 24) return fail();
  return d;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_infinite(std::string_view s) {
  return s == "inf" || s == "+inf" || s == "\xE2\x88\x9E" || s == "infinity";
}

}  // namespace

std::string_view to_string(Calendar c) {
  switch (c) {
    case Calendar::kHours: return "Hours";
    case Calendar::kDays: return "Days";
    case Calendar::kWeeks: return "Weeks";
  }
  return "?";
}

std::string PeriodicExpression::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    const auto& t = terms[i];
    if (t.all) {
      out += "all";
    } else {
      out += "{";
      for (std::size_t k = 0; k < t.offsets.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(t.offsets[k]);
      }
      out += "}";
    }
    out += ".";
    out += tacwf::to_string(t.calendar);
  }
  out += " > " + std::to_string(r) + "." + std::string(tacwf::to_string(duration));
  return out;
}

PeriodicExpression parse_periodic_expression(std::string_view text) {
  Lexer lx(text);
  PeriodicExpression p;
  do {
    CalendarTerm term;
    if (lx.accept("all")) {
      term.all = true;
    } else if (lx.accept("{")) {
      term.offsets = offset_set(lx);
      if (term.offsets.empty()) lx.fail("empty offset set");
    } else {
      term.offsets.push_back(lx.number());
    }
    if (!lx.accept_dot()) lx.fail("expected '.' before calendar");
    term.calendar = calendar_named(lx);
    p.terms.push_back(std::move(term));
  } while (lx.accept("+"));
  if (!lx.accept_triangle()) lx.fail("expected '>'");
  if (lx.accept("{")) {
    std::vector<std::int64_t> r = offset_set(lx);
    if (r.size() != 1) lx.fail("duration takes a single count");
    p.r = r.front();
  } else {
    p.r = lx.number();
  }
  if (!lx.accept_dot()) lx.fail("expected '.' before duration calendar");
  p.duration = calendar_named(lx);
  if (!lx.done()) lx.fail("trailing input");

  if (!p.terms.front().all) {
    throw Error(ErrorCode::kFirstTermNotAll, "first term of '" + std::string(text) + "' must be 'all'");
  }
  for (std::size_t i = 1; i < p.terms.size(); ++i) {
    const auto& t = p.terms[i];
    std::int64_t parent = hours_per_granule(p.terms[i - 1].calendar);
    std::int64_t mine = hours_per_granule(t.calendar);
    if (mine >= parent) {
      throw Error(ErrorCode::kNonDescendingCalendars,
                  std::string(tacwf::to_string(t.calendar)) + " does not refine " +
                      std::string(tacwf::to_string(p.terms[i - 1].calendar)));
    }
    if (t.all) throw Error(ErrorCode::kParseError, "only the first term may be 'all'");
    for (std::int64_t o : t.offsets) {
      if (o < 1 || o > parent / mine) {
        throw Error(ErrorCode::kParseError, "offset " + std::to_string(o) + " outside 1.." +
                                                std::to_string(parent / mine));
      }
    }
  }
  if (hours_per_granule(p.duration) > hours_per_granule(p.terms.back().calendar)) {
    throw Error(ErrorCode::kNonDescendingCalendars, "duration calendar is coarser than the last term");
  }
  if (p.r < 1) throw Error(ErrorCode::kParseError, "duration count must be positive");
  return p;
}

std::int64_t periodicity(const PeriodicExpression& p) { return hours_per_granule(p.terms.front().calendar); }

std::int64_t granularity(const PeriodicExpression& p) { return p.r * hours_per_granule(p.duration); }

std::vector<std::int64_t> displacement(const PeriodicExpression& p, std::int64_t anchor) {
  std::vector<std::int64_t> acc{anchor + 1};
  for (std::size_t i = 1; i < p.terms.size(); ++i) {
    std::vector<std::int64_t> next;
    std::int64_t h = hours_per_granule(p.terms[i].calendar);
    for (std::int64_t base : acc) {
      for (std::int64_t o : p.terms[i].offsets) next.push_back(base + (o - 1) * h);
    }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
  return acc;
}

Bound TimeWindow::instant(std::string_view date, bool as_end) const {
  date = trim(date);
  if (is_infinite(date)) {
    if (!as_end) throw Error(ErrorCode::kParseError, "a window cannot begin at infinity");
    return Bound::pos_inf();
  }
  DateParts d = parse_date(date);
  using namespace std::chrono;
  sys_days origin{year{origin_year} / January / 1};
  sys_days when{year{d.year} / month{static_cast<unsigned>(d.month)} / day{static_cast<unsigned>(d.day)}};
  std::int64_t days = (when - origin).count();
  std::int64_t hh = d.hour == 0 ? (as_end ? 24 : 1) : d.hour;
  if (d.hour == 0 && date.find(':') != std::string_view::npos) {
    throw Error(ErrorCode::kParseError, "hour must be in 01..24 in '" + std::string(date) + "'");
  }
  return Bound(days * 24 + (as_end ? hh : hh - 1));
}

TimeWindow TimeWindow::parse(std::string_view begin, std::string_view end) {
  TimeWindow w;
  std::string_view b = trim(begin);
  if (is_infinite(b)) throw Error(ErrorCode::kParseError, "a window cannot begin at infinity");
  w.origin_year = parse_date(b).year;
  w.begin = w.instant(b, false);
  w.end = w.instant(end, true);
  return w;
}

std::int64_t TimeWindow::week_anchor() const {
  using namespace std::chrono;
  sys_days origin{year{origin_year} / January / 1};
  weekday wd{origin};
  unsigned ahead = (Monday - wd).count();
  return static_cast<std::int64_t>(ahead) * 24;
}

std::int64_t TimeWindow::anchor_for(const PeriodicExpression& p) const {
  return p.terms.front().calendar == Calendar::kWeeks ? week_anchor() : 0;
}

std::vector<SpannedInterval> spanned_intervals(const PeriodicExpression& p, const TimeWindow& w) {
  if (!w.end.is_finite()) throw Error(ErrorCode::kUnboundedWindow, "window end is infinite");
  if (w.end < w.begin) throw Error(ErrorCode::kEmptyWindow, "window ends before it begins");
  const std::int64_t per = periodicity(p);
  const std::int64_t g = granularity(p);
  const std::int64_t lo_w = w.begin.ceil();
  const std::int64_t hi_w = w.end.floor();
  std::vector<SpannedInterval> out;
  for (std::int64_t z : displacement(p, w.anchor_for(p))) {
    std::int64_t n_first = floor_div(lo_w - z + 1, per) - 1;
    std::int64_t n_last = floor_div(hi_w - z + 1, per) + 1;
    for (std::int64_t n = n_first; n <= n_last; ++n) {
      std::int64_t lo = per * n + z - 1;
      std::int64_t hi = lo + g;
      if (lo < 0 || lo < lo_w || hi > hi_w) continue;
      out.push_back({n + 1, z, lo, hi});
    }
  }
  std::sort(out.begin(), out.end(), [](const SpannedInterval& a, const SpannedInterval& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.z < b.z;
  });
  return out;
}

PointId interval_start_point(const std::string& prefix, const SpannedInterval& iv) {
  return prefix + "S_" + std::to_string(iv.period) + "_" + std::to_string(iv.z);
}

PointId interval_end_point(const std::string& prefix, const SpannedInterval& iv) {
  return prefix + "E_" + std::to_string(iv.period) + "_" + std::to_string(iv.z);
}

Stn pt2stn(const PeriodicExpression& p, const TimeWindow& w, const std::string& prefix) {
  Stn stn("Z");
  for (const auto& iv : spanned_intervals(p, w)) {
    PointId s = interval_start_point(prefix, iv);
    PointId e = interval_end_point(prefix, iv);
    stn.add_point(s);
    stn.add_point(e);
    stn.add_link({"Z", s, Bound(iv.lo), Bound(iv.lo), {}});
    stn.add_link({s, e, Bound(iv.hi - iv.lo), Bound(iv.hi - iv.lo), {}});
  }
  return stn;
}

}  // namespace tacwf
