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

#include "tacwf/trbac.hpp"

#include <algorithm>
#include <numeric>

#include "tacwf/security.hpp"

namespace tacwf {
namespace {

struct Span {
  std::size_t event;
  SpannedInterval iv;
};

std::string describe(const PeriodicEvent& ev, std::size_t index) {
  return ev.name.empty() ? "event #" + std::to_string(index + 1) : "event " + ev.name;
}

}  // namespace

std::set<std::string> TrbacModel::users_of(const std::string& role) const {
  std::set<std::string> out;
  for (const auto& [u, r] : ua) {
    if (r == role) out.insert(u);
  }
  return out;
}

std::vector<SpannedInterval> event_intervals(const PeriodicEvent& ev, const TimeWindow& window) {
  TimeWindow eff = window;
  eff.begin = std::max(window.begin, window.instant(ev.begin, false));
  eff.end = std::min(window.end, window.instant(ev.end, true));
  if (eff.end < eff.begin) return {};
  return spanned_intervals(ev.expression, eff);
}

ValidationReport validate_trbac(const TrbacModel& model) {
  ValidationReport report;
  if (model.users.count(std::string(kWorkflowUser))) {
    report.add("user name '" + std::string(kWorkflowUser) + "' is reserved for the workflow system");
  }
  for (const auto& [u, r] : model.ua) {
    if (!model.users.count(u)) report.add("ua references unknown user " + u);
    if (!model.roles.count(r)) report.add("ua references unknown role " + r);
  }
  for (const auto& [r, t] : model.pa) {
    if (!model.roles.count(r)) report.add("pa references unknown role " + r);
    if (!model.perms.count(t)) report.add("pa references unknown task " + t);
  }

  // Parse every event's dates on a timeline anchored at the earliest year.
  int origin_year = 0;
  std::vector<bool> usable(model.reb.size(), false);
  for (std::size_t i = 0; i < model.reb.size(); ++i) {
    const auto& ev = model.reb[i];
    const std::string who = describe(ev, i);
    if (!model.roles.count(ev.role)) report.add(who + " enables unknown role " + ev.role);
    if (ev.disable) report.add(who + " is an explicit disable event");
    if (!ev.triggers.empty()) report.add(who + " declares role triggers");
    if (!ev.requests.empty()) report.add(who + " declares runtime requests");
    try {
      TimeWindow w = TimeWindow::parse(ev.begin, ev.end);
      if (w.end < w.begin) {
        report.add(who + " has an empty interval");
        continue;
      }
      origin_year = origin_year == 0 ? w.origin_year : std::min(origin_year, w.origin_year);
      usable[i] = true;
    } catch (const Error& e) {
      report.add(who + ": " + e.what());
    }
  }
  if (origin_year == 0) return report;

  TimeWindow timeline;
  timeline.origin_year = origin_year;
  Bound last{0};
  std::int64_t period = 1;
  for (std::size_t i = 0; i < model.reb.size(); ++i) {
    if (!usable[i]) continue;
    const auto& ev = model.reb[i];
    last = std::max(last, timeline.instant(ev.begin, false));
    Bound end = timeline.instant(ev.end, true);
    if (end.is_finite()) last = std::max(last, end);
    period = std::lcm(period, periodicity(ev.expression));
  }
  timeline.begin = Bound(0);
  timeline.end = last + Bound(2 * period + 2 * hours_per_granule(Calendar::kWeeks));

  std::map<std::string, std::vector<Span>> by_role;
  for (std::size_t i = 0; i < model.reb.size(); ++i) {
    if (!usable[i]) continue;
    for (const auto& iv : event_intervals(model.reb[i], timeline)) by_role[model.reb[i].role].push_back({i, iv});
  }
  for (auto& [role, spans] : by_role) {
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.iv.lo < b.iv.lo; });
    std::size_t widest = 0;
    for (std::size_t k = 1; k < spans.size(); ++k) {
      const Span& prev = spans[widest];
      const Span& cur = spans[k];
      if (cur.iv.lo < prev.iv.hi) {
        report.add("enabling intervals of role " + role + " overlap: [" + std::to_string(prev.iv.lo) + "," +
                   std::to_string(prev.iv.hi) + "] from " + describe(model.reb[prev.event], prev.event) + " and [" +
                   std::to_string(cur.iv.lo) + "," + std::to_string(cur.iv.hi) + "] from " +
                   describe(model.reb[cur.event], cur.event));
        break;
      }
      if (cur.iv.hi > prev.iv.hi) widest = k;
    }
  }
  return report;
}

}  // namespace tacwf
