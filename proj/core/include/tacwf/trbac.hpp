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

#ifndef TACWF_TRBAC_HPP_
#define TACWF_TRBAC_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tacwf/error.hpp"
#include "tacwf/periodic.hpp"

namespace tacwf {

/// ([begin, end], P, enable role). Disabling is the implicit complement.
struct PeriodicEvent {
  /// Label used to name access points, e.g. "P1".
  std::string name;
  std::string begin;
  std::string end = "inf";
  PeriodicExpression expression;
  std::string role;

  // Features outside the supported fragment. The validator rejects them.
  bool disable = false;
  std::vector<std::string> triggers;
  std::vector<std::string> requests;
  std::optional<int> priority;
};

struct TrbacModel {
  std::set<std::string> users;
  std::set<std::string> roles;
  /// Task names.
  std::set<std::string> perms;
  std::set<std::pair<std::string, std::string>> ua;  // (user, role)
  std::set<std::pair<std::string, std::string>> pa;  // (role, task)
  std::vector<PeriodicEvent> reb;

  std::set<std::string> users_of(const std::string& role) const;
  bool permits(const std::string& role, const std::string& task) const { return pa.count({role, task}) != 0; }
};

/// Enabling intervals of `ev` inside `window`, clipped to the event's own
/// [begin, end]. Empty when the two do not meet.
std::vector<SpannedInterval> event_intervals(const PeriodicEvent& ev, const TimeWindow& window);

/// Referential integrity, the reserved wf user, unsupported features, and
/// overlapping enabling intervals for the same role.
ValidationReport validate_trbac(const TrbacModel& model);

}  // namespace tacwf

#endif  // TACWF_TRBAC_HPP_
