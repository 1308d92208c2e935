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

#ifndef TACWF_CONFIGURATION_HPP_
#define TACWF_CONFIGURATION_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tacwf/periodic.hpp"
#include "tacwf/security.hpp"
#include "tacwf/trbac.hpp"
#include "tacwf/workflow.hpp"

namespace tacwf {

/// One enabling interval a task may be connected to.
struct IntervalCandidate {
  std::string event;
  SpannedInterval interval;

  friend bool operator==(const IntervalCandidate&, const IntervalCandidate&) = default;
};

/// Access points P^S, P^E of the interval connected to a task, with label rho.
struct EnablingLink {
  IntervalCandidate source;
  PointId start;
  PointId end;
  std::vector<std::string> roles;
};

struct Configuration {
  Stnu stnu;
  WfStnuMapping mapping;
  /// Task names in workflow order.
  std::vector<std::string> tasks;
  std::map<std::string, EnablingLink> enabling;
  std::set<PointId> access_points;
  AuthMap auth;

  bool is_task_point(const PointId& p) const;
  /// Name of the task owning A or C, empty for other points.
  std::string task_of(const PointId& p) const;
  const TaskPoints& points_of(const std::string& task) const;
};

/// Explicit task -> interval choices for roles with several candidates.
/// An empty `event` matches any event enabling the task's roles.
using IntervalAssignments = std::map<std::string, IntervalCandidate>;

/// Chronological candidates for a task: intervals enabling every role in its
/// label inside the window. Throws Error(UnknownTask).
std::vector<IntervalCandidate> interval_candidates(const Workflow& wf, const TrbacModel& trbac,
                                                   const TimeWindow& window, const std::string& task);

/// Links P^S -[0,inf],rho-> A and C -[0,inf],rho-> P^E for every task and merges
/// the chosen access intervals on the shared origin. Access points are named
/// "<event>S"/"<event>E" when the event spans a single interval in the window,
/// and "<event>S_<n>_<z>"/"<event>E_<n>_<z>" otherwise.
/// Throws Error(NoEnablingInterval) or Error(AmbiguousInterval).
Configuration connect(const WfStnuMapping& mapping, const Workflow& wf, const TrbacModel& trbac,
                      const TimeWindow& window, const IntervalAssignments& assignments = {});

/// Tries assignments in chronological order and returns the first whose
/// configuration passes the width precheck and is dynamically controllable.
/// Falls back to the earliest assignment when none does.
/// Throws Error(NoEnablingInterval).
IntervalAssignments choose_intervals(const WfStnuMapping& mapping, const Workflow& wf,
                                     const TrbacModel& trbac, const TimeWindow& window,
                                     std::size_t max_attempts = 4096);

struct WidthViolation {
  std::string task;
  Bound width;
  Bound upper;

  friend bool operator==(const WidthViolation&, const WidthViolation&) = default;
};

/// Tasks whose enabling interval is narrower than their longest duration.
std::vector<WidthViolation> precheck_enabling_width(const Configuration& config);

/// Task points get every user holding a labelled role with permission for the
/// task; all other points get wf. Throws Error(EmptyAuthorizedSet).
AuthMap derive_authorized(const Configuration& config, const TrbacModel& trbac);

/// wf_to_stnu, choose or apply interval assignments, connect and derive_authorized.
Configuration build_configuration(const Workflow& wf, const TrbacModel& trbac, const TimeWindow& window,
                                  const IntervalAssignments& assignments = {});

}  // namespace tacwf

#endif  // TACWF_CONFIGURATION_HPP_
