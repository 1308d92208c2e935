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

#include "tacwf/configuration.hpp"

#include <algorithm>

namespace tacwf {
namespace {

std::string event_label(const TrbacModel& trbac, std::size_t index) {
  const auto& ev = trbac.reb[index];
  return ev.name.empty() ? "P" + std::to_string(index + 1) : ev.name;
}

const Task& task_or_throw(const Workflow& wf, const std::string& name) {
  const Task* t = wf.find_task(name);
  if (!t) throw Error(ErrorCode::kUnknownTask, name);
  return *t;
}

bool matches(const IntervalCandidate& want, const IntervalCandidate& have) {
  return (want.event.empty() || want.event == have.event) && want.interval.period == have.interval.period &&
         want.interval.z == have.interval.z;
}

std::string candidate_text(const IntervalCandidate& c) {
  return c.event + "[" + std::to_string(c.interval.lo) + "," + std::to_string(c.interval.hi) + "]";
}

}  // namespace

bool Configuration::is_task_point(const PointId& p) const { return !task_of(p).empty(); }

std::string Configuration::task_of(const PointId& p) const {
  for (const auto& [name, tp] : mapping.task_points) {
    if (tp.activation == p || tp.contingent == p) return name;
  }
  return {};
}

const TaskPoints& Configuration::points_of(const std::string& task) const {
  auto it = mapping.task_points.find(task);
  if (it == mapping.task_points.end()) throw Error(ErrorCode::kUnknownTask, task);
  return it->second;
}

std::vector<IntervalCandidate> interval_candidates(const Workflow& wf, const TrbacModel& trbac,
                                                   const TimeWindow& window, const std::string& task) {
  const Task& t = task_or_throw(wf, task);
  if (t.roles.empty()) return {};
  auto spans_of = [&](const std::string& role) {
    std::vector<IntervalCandidate> out;
    for (std::size_t i = 0; i < trbac.reb.size(); ++i) {
      if (trbac.reb[i].role != role) continue;
      for (const auto& iv : event_intervals(trbac.reb[i], window)) out.push_back({event_label(trbac, i), iv});
    }
    return out;
  };
  std::vector<IntervalCandidate> out = spans_of(t.roles.front());
  for (std::size_t r = 1; r < t.roles.size(); ++r) {
    std::vector<IntervalCandidate> other = spans_of(t.roles[r]);
    std::erase_if(out, [&](const IntervalCandidate& c) {
      return std::none_of(other.begin(), other.end(), [&](const IntervalCandidate& o) {
        return o.interval.lo == c.interval.lo && o.interval.hi == c.interval.hi;
      });
    });
  }
  std::sort(out.begin(), out.end(), [](const IntervalCandidate& a, const IntervalCandidate& b) {
    return a.interval.lo != b.interval.lo ? a.interval.lo < b.interval.lo : a.event < b.event;
  });
  return out;
}

Configuration connect(const WfStnuMapping& mapping, const Workflow& wf, const TrbacModel& trbac,
                      const TimeWindow& window, const IntervalAssignments& assignments) {
  Configuration config{mapping.stnu, mapping, {}, {}, {}, {}};
  std::map<std::string, std::size_t> spans_per_event;
  for (std::size_t i = 0; i < trbac.reb.size(); ++i) {
    spans_per_event[event_label(trbac, i)] += event_intervals(trbac.reb[i], window).size();
  }

  Stn& net = config.stnu.base();
  for (const auto& task : wf.tasks) {
    config.tasks.push_back(task.name);
    for (const auto& role : task.roles) {
      if (!trbac.permits(role, task.name)) {
        throw Error(ErrorCode::kNoEnablingInterval, task.name + ": role " + role + " lacks permission for the task");
      }
    }
    std::vector<IntervalCandidate> candidates = interval_candidates(wf, trbac, window, task.name);
    if (candidates.empty()) throw Error(ErrorCode::kNoEnablingInterval, task.name);

    IntervalCandidate chosen;
    if (auto it = assignments.find(task.name); it != assignments.end()) {
      auto hit = std::find_if(candidates.begin(), candidates.end(),
                              [&](const IntervalCandidate& c) { return matches(it->second, c); });
      if (hit == candidates.end()) {
        throw Error(ErrorCode::kNoEnablingInterval,
                    task.name + ": assigned interval (" + std::to_string(it->second.interval.period) + "," +
                        std::to_string(it->second.interval.z) + ") is not a candidate");
      }
      chosen = *hit;
    } else if (candidates.size() == 1) {
      chosen = candidates.front();
    } else {
      std::string detail = task.name + ":";
      for (const auto& c : candidates) detail += " " + candidate_text(c);
      throw Error(ErrorCode::kAmbiguousInterval, detail);
    }

    EnablingLink link;
    link.source = chosen;
    link.roles = task.roles;
    if (spans_per_event[chosen.event] == 1) {
      link.start = chosen.event + "S";
      link.end = chosen.event + "E";
    } else {
      link.start = interval_start_point(chosen.event, chosen.interval);
      link.end = interval_end_point(chosen.event, chosen.interval);
    }
    const Bound lo(chosen.interval.lo);
    const Bound width(chosen.interval.hi - chosen.interval.lo);
    net.add_point(link.start);
    net.add_point(link.end);
    net.add_link({net.origin(), link.start, lo, lo, {}});
    net.add_link({link.start, link.end, width, width, {}});
    const TaskPoints& tp = mapping.task_points.at(task.name);
    net.add_link({link.start, tp.activation, Bound(0), Bound::pos_inf(), task.roles});
    net.add_link({tp.contingent, link.end, Bound(0), Bound::pos_inf(), task.roles});
    config.access_points.insert(link.start);
    config.access_points.insert(link.end);
    config.enabling.emplace(task.name, std::move(link));
  }
  return config;
}

IntervalAssignments choose_intervals(const WfStnuMapping& mapping, const Workflow& wf, const TrbacModel& trbac,
                                     const TimeWindow& window, std::size_t max_attempts) {
  std::vector<std::vector<IntervalCandidate>> options;
  for (const auto& task : wf.tasks) {
    options.push_back(interval_candidates(wf, trbac, window, task.name));
    if (options.back().empty()) throw Error(ErrorCode::kNoEnablingInterval, task.name);
  }
  auto assemble = [&](const std::vector<std::size_t>& digits) {
    IntervalAssignments a;
    for (std::size_t i = 0; i < wf.tasks.size(); ++i) a[wf.tasks[i].name] = options[i][digits[i]];
    return a;
  };

  std::vector<std::size_t> digits(options.size(), 0);
  const IntervalAssignments first = assemble(digits);
  bool single = std::all_of(options.begin(), options.end(), [](const auto& o) { return o.size() == 1; });
  if (single) return first;

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    IntervalAssignments a = assemble(digits);
    Configuration c = connect(mapping, wf, trbac, window, a);
    if (precheck_enabling_width(c).empty() && check_dynamic_controllability(c.stnu).controllable) return a;
    // Mixed-radix increment, first task most significant.
    std::size_t pos = digits.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < options[pos].size()) break;
      digits[pos] = 0;
      if (pos == 0) return first;
    }
  }
  return first;
}

std::vector<WidthViolation> precheck_enabling_width(const Configuration& config) {
  std::vector<WidthViolation> out;
  for (const auto& task : config.tasks) {
    const EnablingLink& link = config.enabling.at(task);
    const ContingentLink* c = config.stnu.contingent_link(config.points_of(task).contingent);
    Bound width(link.source.interval.hi - link.source.interval.lo);
    if (width < c->upper) out.push_back({task, width, c->upper});
  }
  return out;
}

AuthMap derive_authorized(const Configuration& config, const TrbacModel& trbac) {
  AuthMap out;
  for (const auto& p : config.stnu.base().points()) {
    std::string task = config.task_of(p);
    if (task.empty()) {
      out[p] = {AuthEntry{std::string(kWorkflowUser), std::nullopt}};
      continue;
    }
    std::set<std::string> users;
    for (const auto& role : config.enabling.at(task).roles) {
      if (!trbac.permits(role, task)) continue;
      for (const auto& u : trbac.users_of(role)) users.insert(u);
    }
    users.erase(std::string(kWorkflowUser));
    if (users.empty()) throw Error(ErrorCode::kEmptyAuthorizedSet, task);
    AuthSet set;
    for (const auto& u : users) set.push_back({u, std::nullopt});
    out[p] = std::move(set);
  }
  return out;
}

Configuration build_configuration(const Workflow& wf, const TrbacModel& trbac, const TimeWindow& window,
                                  const IntervalAssignments& assignments) {
  WfStnuMapping mapping = wf_to_stnu(wf);
  IntervalAssignments chosen = assignments.empty() ? choose_intervals(mapping, wf, trbac, window) : assignments;
  Configuration config = connect(mapping, wf, trbac, window, chosen);
  config.auth = derive_authorized(config, trbac);
  return config;
}

}  // namespace tacwf
