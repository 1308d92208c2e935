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

#ifndef TACWF_EXECUTOR_HPP_
#define TACWF_EXECUTOR_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tacwf/configuration.hpp"
#include "tacwf/error.hpp"
#include "tacwf/security.hpp"

namespace tacwf {

enum class Status { kRunning, kCompleted, kDeadlocked, kViolationRaised };

std::string_view to_string(Status s);

/// (user : point = time) together with the authorization map right after it.
struct TraceRecord {
  std::string user;
  PointId point;
  Bound time;
  AuthMap auth;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct PendingContingent {
  PointId contingent;
  PointId activation;
  std::string starter;
  Bound started_at;
  Bound earliest;
  Bound latest;

  friend bool operator==(const PendingContingent&, const PendingContingent&) = default;
};

enum class Verdict { kAuthorized, kBlocked, kNotInSet };

std::string_view to_string(Verdict v);

struct UserPermit {
  std::string user;
  Verdict verdict = Verdict::kNotInSet;
  /// The blocking constraint when `verdict` is kBlocked.
  std::optional<SecurityConstraint> constraint;
};

struct StepPermit {
  PointId point;
  Range range;
  std::vector<UserPermit> users;
};

class ExecutionState;

/// Raised by transitions that break a temporal requirement. Carries the
/// resulting ViolationRaised state; the state the call was made on is untouched.
class ViolationError : public Error {
 public:
  ViolationError(ErrorCode code, std::string detail, std::shared_ptr<const ExecutionState> state);

  const ExecutionState& state() const { return *state_; }

 private:
  std::shared_ptr<const ExecutionState> state_;
};

/// One run of a configuration. Every mutator either succeeds or throws and
/// leaves the state as it was.
class ExecutionState {
 public:
  /// Throws Error(UnsafeRuleSet) when `rules` contains a conflicting pair.
  ExecutionState(std::shared_ptr<const Configuration> config, RuleSet rules);

  const Configuration& config() const { return *config_; }
  std::shared_ptr<const Configuration> config_ptr() const { return config_; }
  const RuleSet& rules() const { return *rules_; }
  const Bound& now() const { return now_; }
  Status status() const { return status_; }
  /// Reason for a Deadlocked or ViolationRaised status.
  const std::string& status_detail() const { return detail_; }
  const AuthMap& auth() const { return auth_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }
  const std::map<PointId, PendingContingent>& pending() const { return pending_; }
  const Stn& network() const { return network_; }

  bool executed(const PointId& x) const { return times_.count(x) != 0; }
  std::optional<Bound> time_of(const PointId& x) const;

  /// Feasible range of `x` in the current network.
  Range range(const PointId& x) const;

  /// All points that must precede `x` are executed, and no contingent that may
  /// coincide with or precede it is still unobserved.
  bool is_enabled(const PointId& x) const;

  /// The origin and access points, executed by wf at their forced times.
  bool is_auto(const PointId& x) const;

  /// Users appearing anywhere in the authorization map, sorted.
  std::set<std::string> users() const;

  /// Permits for every unexecuted control point that is enabled and live now.
  std::vector<StepPermit> live_enabled() const;

  /// Moves the clock to `t`, executing due automatic points on the way.
  /// Throws Error(NotRunning), Error(TimeOutOfRange) or ViolationError(DeadlineMissed).
  void advance_time(const Bound& t);

  /// Throws Error(NotRunning | UnknownPoint | NotEnabled | WrongOwner |
  /// UserNotAuthorized | UserBlocked | TimeOutOfRange) or ViolationError.
  void execute_timepoint(const std::string& user, const PointId& x, const Bound& t);

  /// Throws Error(NotRunning | NotPending | WrongOwner | UserNotAuthorized |
  /// UserBlocked | TimeOutOfRange) or ViolationError(OutsideContingentWindow | DeadlineMissed).
  void observe_contingent(const std::string& user, const PointId& c, const Bound& t);

  /// Advances through the remaining automatic points when nothing else is left.
  void advance_to_completion();

 private:
  void refresh_distances();
  void run_automatic(const Bound& until);
  void check_deadlines(const Bound& at);
  void record(const std::string& user, const PointId& x, const Bound& t);
  void fire_rules(const std::string& user, const PointId& x);
  void update_status();
  [[noreturn]] void violate(ErrorCode code, const std::string& detail);
  const AuthEntry& authorize(const std::string& user, const PointId& x, const Bound& t) const;

  std::shared_ptr<const Configuration> config_;
  std::shared_ptr<const RuleSet> rules_;
  Bound now_{0};
  Status status_ = Status::kRunning;
  std::string detail_;
  AuthMap auth_;
  Stn network_;
  DistanceMatrix dist_;
  std::map<PointId, Bound> times_;
  std::vector<TraceRecord> trace_;
  std::map<PointId, PendingContingent> pending_;
};

struct ScenarioStep {
  std::string user;
  PointId point;
  Bound time;

  friend bool operator==(const ScenarioStep&, const ScenarioStep&) = default;
};

struct Scenario {
  /// Task name -> duration, used for contingents without an explicit step.
  std::map<std::string, Bound> durations;
  /// Internal workflow point -> execution time.
  std::map<PointId, Bound> wf_choices;
  std::vector<ScenarioStep> steps;
};

struct StepFailure {
  std::size_t index = 0;
  PointId point;
  ErrorCode code = ErrorCode::kNotEnabled;
  std::string detail;
};

struct ScenarioResult {
  ExecutionState final_state;
  std::optional<StepFailure> failure;

  bool ok() const { return !failure && final_state.status() == Status::kCompleted; }
};

/// The ordered steps run_scenario drives: wf choices and explicit steps merged
/// by time, wf choices first on ties. Throws Error(MissingWfChoice).
std::vector<ScenarioStep> scenario_schedule(const Configuration& config, const Scenario& scenario);

/// Replays `scenario`. Contingents without an explicit step are observed at
/// activation + duration by the user who started the task. The first failing
/// step stops the run and is reported with its schedule index.
/// Throws Error(MissingWfChoice) or Error(UnsafeRuleSet).
ScenarioResult run_scenario(std::shared_ptr<const Configuration> config, const RuleSet& rules,
                            const Scenario& scenario);

/// Drives a run to the end on the integer grid: earliest deadline first,
/// executing each point as soon as it is live. Users and contingent durations
/// are drawn from `seed`; without one the smallest user and duration are taken.
ScenarioResult auto_run(ExecutionState state, std::optional<std::uint64_t> seed = std::nullopt,
                        std::size_t max_iterations = 100000);

/// Every requirement and contingent link checked against the recorded times.
ValidationReport validate_schedule(const Configuration& config, const std::vector<TraceRecord>& trace);

}  // namespace tacwf

#endif  // TACWF_EXECUTOR_HPP_
