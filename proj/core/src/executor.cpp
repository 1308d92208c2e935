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

#include "tacwf/executor.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace tacwf {
namespace {

const std::string kWf(kWorkflowUser);

// True when the entry stays blocked at every instant of [from, to].
bool blocked_throughout(const AuthEntry& e, const Bound& from, const Bound& to) {
  if (!e.constraint || e.constraint->is_type2()) return false;
  const Bound& k = e.constraint->k;
  switch (e.constraint->op) {
    case Op::kLe: return to <= k;
    case Op::kLt: return to < k;
    case Op::kGe: return from >= k;
    case Op::kGt: return from > k;
    case Op::kEq: return from == k && to == k;
    case Op::kNe: return k < from || to < k;
  }
  return false;
}

std::string range_text(const Range& r) { return "[" + r.lower.to_string() + "," + r.upper.to_string() + "]"; }

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kRunning: return "Running";
    case Status::kCompleted: return "Completed";
    case Status::kDeadlocked: return "Deadlocked";
    case Status::kViolationRaised: return "ViolationRaised";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kAuthorized: return "authorized";
    case Verdict::kBlocked: return "blocked";
    case Verdict::kNotInSet: return "not-in-set";
  }
  return "?";
}

ViolationError::ViolationError(ErrorCode code, std::string detail, std::shared_ptr<const ExecutionState> state)
    : Error(code, std::move(detail)), state_(std::move(state)) {}

ExecutionState::ExecutionState(std::shared_ptr<const Configuration> config, RuleSet rules)
    : config_(std::move(config)), network_(config_->stnu.base()) {
  auto conflicts = conflicting_pairs(rules.rules);
  if (!conflicts.empty()) {
    const auto& [i, j] = conflicts.front();
    throw Error(ErrorCode::kUnsafeRuleSet, rules.rules[i].to_string() + " conflicts with " + rules.rules[j].to_string());
  }
  rules.safe = true;
  rules_ = std::make_shared<const RuleSet>(std::move(rules));
  auth_ = config_->auth;
  refresh_distances();
}

void ExecutionState::refresh_distances() {
  ShortestPaths sp = all_pairs_shortest_paths(to_distance_graph(network_));
  if (!sp.consistent) throw Error(ErrorCode::kInconsistentNetwork, "execution network became inconsistent");
  dist_ = std::move(sp.dist);
}

std::optional<Bound> ExecutionState::time_of(const PointId& x) const {
  auto it = times_.find(x);
  if (it == times_.end()) return std::nullopt;
  return it->second;
}

Range ExecutionState::range(const PointId& x) const {
  std::size_t i = network_.index_of(x);
  return {-dist_.at(i, 0), dist_.at(0, i)};
}

bool ExecutionState::is_enabled(const PointId& x) const {
  const std::size_t xi = network_.index_of(x);
  const auto& points = network_.points();
  for (std::size_t yi = 0; yi < points.size(); ++yi) {
    if (yi == xi || executed(points[yi])) continue;
    if (dist_.at(xi, yi) > Bound(0)) continue;
    if (config_->stnu.is_contingent(points[yi])) return false;
    if (dist_.at(yi, xi) > Bound(0)) return false;
  }
  return true;
}

bool ExecutionState::is_auto(const PointId& x) const {
  return x == network_.origin() || config_->access_points.count(x) != 0;
}

std::set<std::string> ExecutionState::users() const {
  std::set<std::string> out;
  for (const auto& [p, set] : auth_) {
    for (const auto& e : set) out.insert(e.user);
  }
  return out;
}

std::vector<StepPermit> ExecutionState::live_enabled() const {
  std::vector<StepPermit> out;
  if (status_ != Status::kRunning) return out;
  const std::set<std::string> everyone = users();
  for (const auto& p : network_.points()) {
    if (executed(p) || config_->stnu.is_contingent(p) || !is_enabled(p)) continue;
    Range r = range(p);
    if (!r.contains(now_)) continue;
    StepPermit permit{p, r, {}};
    const AuthSet& set = auth_.at(p);
    for (const auto& u : everyone) {
      const AuthEntry* e = find_entry(set, u);
      if (!e) {
        permit.users.push_back({u, Verdict::kNotInSet, std::nullopt});
      } else if (is_blocked(*e, now_)) {
        permit.users.push_back({u, Verdict::kBlocked, e->constraint});
      } else {
        permit.users.push_back({u, Verdict::kAuthorized, std::nullopt});
      }
    }
    out.push_back(std::move(permit));
  }
  return out;
}

void ExecutionState::violate(ErrorCode code, const std::string& detail) {
  status_ = Status::kViolationRaised;
  detail_ = std::string(to_string(code)) + ": " + detail;
  throw ViolationError(code, detail, std::make_shared<const ExecutionState>(*this));
}

void ExecutionState::check_deadlines(const Bound& at) {
  for (const auto& [c, pc] : pending_) {
    if (pc.latest < at) violate(ErrorCode::kDeadlineMissed, c + " was due by " + pc.latest.to_string());
  }
  for (const auto& p : network_.points()) {
    if (executed(p)) continue;
    Range r = range(p);
    if (r.upper < at) violate(ErrorCode::kDeadlineMissed, p + " had to occur by " + r.upper.to_string());
  }
}

void ExecutionState::record(const std::string& user, const PointId& x, const Bound& t) {
  network_ = assign(network_, x, t);
  refresh_distances();
  times_[x] = t;
  pending_.erase(x);
  fire_rules(user, x);
  for (const auto& link : config_->stnu.contingents()) {
    if (link.activation == x) {
      pending_[link.contingent] = {link.contingent, x, user, t, t + link.lower, t + link.upper};
    }
  }
  trace_.push_back({user, x, t, auth_});
}

void ExecutionState::fire_rules(const std::string& user, const PointId& x) {
  for (const auto& rule : rules_->rules) {
    if (rule.guard != x) continue;
    for (const auto& y : rule.targets) {
      auto it = auth_.find(y);
      if (it == auth_.end()) continue;
      for (auto& e : it->second) {
        bool hit = rule.mode == Mode::kSame ? e.user == user : e.user != user;
        if (!hit) continue;
        SecurityConstraint c = rule.constraint;
        if (c.is_type2()) {
          if (auto v = time_of(*c.point)) c = reduce_type2(c, *v);
        }
        e.constraint = c;
      }
    }
  }
  const Bound t = times_.at(x);
  for (auto& [p, set] : auth_) {
    for (auto& e : set) {
      if (e.constraint && e.constraint->point == x) e.constraint = reduce_type2(*e.constraint, t);
    }
  }
}

void ExecutionState::run_automatic(const Bound& until) {
  for (;;) {
    std::optional<std::pair<Bound, PointId>> next;
    for (const auto& p : network_.points()) {
      if (executed(p) || !is_auto(p) || !is_enabled(p)) continue;
      Range r = range(p);
      if (!r.singleton() || until < r.lower) continue;
      std::pair<Bound, PointId> cand{r.lower, p};
      if (!next || cand < *next) next = cand;
    }
    if (!next) return;
    if (next->first < now_) {
      violate(ErrorCode::kDeadlineMissed, next->second + " had to occur at " + next->first.to_string());
    }
    check_deadlines(next->first);
    now_ = next->first;
    record(kWf, next->second, now_);
  }
}

void ExecutionState::update_status() {
  if (status_ != Status::kRunning) return;
  if (times_.size() == network_.size()) {
    status_ = Status::kCompleted;
    detail_.clear();
    return;
  }
  for (const auto& p : network_.points()) {
    if (executed(p) || !config_->is_task_point(p)) continue;
    Range r = range(p);
    Bound from = std::max(now_, r.lower);
    if (r.upper < from) continue;
    const AuthSet& set = auth_.at(p);
    bool stuck = std::all_of(set.begin(), set.end(),
                             [&](const AuthEntry& e) { return blocked_throughout(e, from, r.upper); });
    if (stuck) {
      status_ = Status::kDeadlocked;
      detail_ = "every user authorized for " + p + " stays blocked through " + range_text({from, r.upper});
      return;
    }
  }
}

const AuthEntry& ExecutionState::authorize(const std::string& user, const PointId& x, const Bound& t) const {
  const bool task_point = config_->is_task_point(x);
  if (task_point == (user == kWf)) {
    throw Error(ErrorCode::kWrongOwner, task_point ? x + " is a task point and cannot be executed by wf"
                                                   : x + " belongs to wf");
  }
  const AuthEntry* e = find_entry(auth_.at(x), user);
  if (!e) throw Error(ErrorCode::kUserNotAuthorized, user + " is not in the authorized set of " + x);
  if (is_blocked(*e, t)) throw Error(ErrorCode::kUserBlocked, e->to_string());
  return *e;
}

void ExecutionState::advance_time(const Bound& t) {
  if (status_ != Status::kRunning) throw Error(ErrorCode::kNotRunning, std::string(to_string(status_)));
  if (!t.is_finite() || t < now_) {
    throw Error(ErrorCode::kTimeOutOfRange, "cannot move the clock from " + now_.to_string() + " to " + t.to_string());
  }
  ExecutionState next(*this);
  next.run_automatic(t);
  next.check_deadlines(t);
  next.now_ = t;
  next.update_status();
  *this = std::move(next);
}

void ExecutionState::execute_timepoint(const std::string& user, const PointId& x, const Bound& t) {
  if (status_ != Status::kRunning) throw Error(ErrorCode::kNotRunning, std::string(to_string(status_)));
  if (!network_.has_point(x)) throw Error(ErrorCode::kUnknownPoint, x);
  if (config_->stnu.is_contingent(x)) throw Error(ErrorCode::kNotEnabled, x + " is contingent and can only be observed");
  if (!t.is_finite() || t < now_) {
    throw Error(ErrorCode::kTimeOutOfRange, x + " at " + t.to_string() + " is before now " + now_.to_string());
  }
  ExecutionState next(*this);
  next.run_automatic(t);
  next.check_deadlines(t);
  next.now_ = t;
  if (next.executed(x)) throw Error(ErrorCode::kNotEnabled, x + " is already executed");
  next.authorize(user, x, t);
  if (!next.is_enabled(x)) throw Error(ErrorCode::kNotEnabled, x + " has unexecuted predecessors");
  Range r = next.range(x);
  if (!r.contains(t)) throw Error(ErrorCode::kTimeOutOfRange, x + " at " + t.to_string() + " outside " + range_text(r));
  next.record(user, x, t);
  next.run_automatic(t);
  next.update_status();
  *this = std::move(next);
}

void ExecutionState::observe_contingent(const std::string& user, const PointId& c, const Bound& t) {
  if (status_ != Status::kRunning) throw Error(ErrorCode::kNotRunning, std::string(to_string(status_)));
  if (!network_.has_point(c)) throw Error(ErrorCode::kUnknownPoint, c);
  auto it = pending_.find(c);
  if (it == pending_.end()) throw Error(ErrorCode::kNotPending, c);
  if (!t.is_finite() || t < now_) {
    throw Error(ErrorCode::kTimeOutOfRange, c + " at " + t.to_string() + " is before now " + now_.to_string());
  }
  ExecutionState next(*this);
  const PendingContingent& pc = it->second;
  if (t < pc.earliest || pc.latest < t) {
    next.violate(ErrorCode::kOutsideContingentWindow,
                 c + " at " + t.to_string() + " outside " + range_text({pc.earliest, pc.latest}));
  }
  Range r = range(c);
  if (!r.contains(t)) {
    next.violate(ErrorCode::kOutsideContingentWindow,
                 c + " at " + t.to_string() + " outside its feasible range " + range_text(r));
  }
  next.run_automatic(t);
  next.check_deadlines(t);
  next.now_ = t;
  next.authorize(user, c, t);
  next.record(user, c, t);
  next.run_automatic(t);
  next.update_status();
  *this = std::move(next);
}

void ExecutionState::advance_to_completion() {
  if (status_ != Status::kRunning) return;
  Bound last = now_;
  for (const auto& p : network_.points()) {
    if (executed(p)) continue;
    if (!is_auto(p)) return;
    Range r = range(p);
    if (!r.upper.is_finite()) return;
    last = std::max(last, r.upper);
  }
  advance_time(last);
}

std::vector<ScenarioStep> scenario_schedule(const Configuration& config, const Scenario& scenario) {
  std::set<PointId> stepped;
  for (const auto& s : scenario.steps) stepped.insert(s.point);
  for (const auto& p : config.mapping.internal_points) {
    if (p == config.stnu.base().origin()) continue;
    if (!scenario.wf_choices.count(p) && !stepped.count(p)) throw Error(ErrorCode::kMissingWfChoice, p);
  }
  // Among simultaneous wf choices, points forced after more of the others go later.
  const Stn& net = config.stnu.base();
  ShortestPaths sp = all_pairs_shortest_paths(to_distance_graph(net));
  auto forced_before = [&](const PointId& p) {
    std::size_t n = 0;
    if (!sp.consistent || !net.has_point(p)) return n;
    const std::size_t i = net.index_of(p);
    for (const auto& [q, tq] : scenario.wf_choices) {
      if (q == p || !net.has_point(q)) continue;
      const std::size_t j = net.index_of(q);
      if (sp.dist.at(i, j) <= Bound(0) && Bound(0) < sp.dist.at(j, i)) ++n;
    }
    return n;
  };
  std::vector<std::tuple<Bound, int, std::size_t, ScenarioStep>> merged;
  std::size_t seq = 0;
  std::vector<std::pair<std::size_t, PointId>> choices;
  for (const auto& [p, t] : scenario.wf_choices) choices.emplace_back(forced_before(p), p);
  std::stable_sort(choices.begin(), choices.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [rank, p] : choices) {
    const Bound& t = scenario.wf_choices.at(p);
    merged.emplace_back(t, 0, seq++, ScenarioStep{kWf, p, t});
  }
  for (const auto& s : scenario.steps) merged.emplace_back(s.time, 1, seq++, s);
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
  });
  std::vector<ScenarioStep> out;
  for (auto& m : merged) out.push_back(std::move(std::get<3>(m)));
  return out;
}

ScenarioResult run_scenario(std::shared_ptr<const Configuration> config, const RuleSet& rules,
                            const Scenario& scenario) {
  ExecutionState state(config, rules);
  const std::vector<ScenarioStep> schedule = scenario_schedule(*config, scenario);
  std::set<PointId> explicit_points;
  for (const auto& s : schedule) explicit_points.insert(s.point);

  std::size_t index = 0;
  PointId current = config->stnu.base().origin();

  // Observes implicit contingents due no later than `limit`, earliest first.
  auto observe_due = [&](const std::optional<Bound>& limit) {
    for (;;) {
      std::optional<std::pair<Bound, PendingContingent>> due;
      for (const auto& [c, pc] : state.pending()) {
        if (explicit_points.count(c)) continue;
        std::string task = config->task_of(c);
        auto d = scenario.durations.find(task);
        if (d == scenario.durations.end()) {
          current = c;
          throw Error(ErrorCode::kIncompleteSituation, "no duration for task " + task);
        }
        Bound when = pc.started_at + d->second;
        if (limit && *limit < when) continue;
        if (!due || when < due->first) due = std::make_pair(when, pc);
      }
      if (!due) return;
      current = due->second.contingent;
      state.observe_contingent(due->second.starter, due->second.contingent, due->first);
    }
  };

  try {
    state.advance_time(Bound(0));
    for (; index < schedule.size(); ++index) {
      const ScenarioStep& s = schedule[index];
      observe_due(s.time);
      current = s.point;
      if (config->stnu.is_contingent(s.point)) {
        state.observe_contingent(s.user, s.point, s.time);
      } else {
        state.execute_timepoint(s.user, s.point, s.time);
      }
    }
    observe_due(std::nullopt);
    state.advance_to_completion();
  } catch (const ViolationError& e) {
    return {e.state(), StepFailure{index, current, e.code(), e.detail()}};
  } catch (const Error& e) {
    return {state, StepFailure{index, current, e.code(), e.detail()}};
  }
  return {state, std::nullopt};
}

ScenarioResult auto_run(ExecutionState state, std::optional<std::uint64_t> seed, std::size_t max_iterations) {
  std::mt19937_64 rng(seed.value_or(0));
  auto pick = [&](const auto& options) -> std::size_t {
    if (!seed || options.size() < 2) return 0;
    return std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng);
  };
  auto free_users = [&](const PointId& p) {
    std::vector<std::string> out;
    for (const auto& e : state.auth().at(p)) {
      if (!is_blocked(e, state.now())) out.push_back(e.user);
    }
    return out;
  };

  std::map<PointId, Bound> planned;
  PointId current = state.network().origin();
  try {
    state.advance_time(state.now());
    for (std::size_t iter = 0; iter < max_iterations && state.status() == Status::kRunning; ++iter) {
      // Fix a completion time for every newly started task.
      for (const auto& [c, pc] : state.pending()) {
        if (planned.count(c)) continue;
        Range r = state.range(c);
        std::int64_t lo = std::max(pc.earliest, r.lower).ceil();
        std::int64_t hi = std::min(pc.latest, r.upper).floor();
        std::vector<std::int64_t> options;
        for (std::int64_t v = lo; v <= hi; ++v) options.push_back(v);
        planned[c] = options.empty() ? pc.earliest : Bound(options[pick(options)]);
      }

      bool progressed = false;
      for (auto it = planned.begin(); it != planned.end() && !progressed; ++it) {
        const auto& [c, when] = *it;
        if (!state.pending().count(c) || when != state.now()) continue;
        std::vector<std::string> users = free_users(c);
        current = c;
        if (users.empty()) {
          it->second = state.now() + Bound(1);
          continue;
        }
        state.observe_contingent(users[pick(users)], c, state.now());
        progressed = true;
      }
      if (progressed) continue;

      std::vector<StepPermit> permits = state.live_enabled();
      std::sort(permits.begin(), permits.end(), [](const StepPermit& a, const StepPermit& b) {
        return a.range.upper != b.range.upper ? a.range.upper < b.range.upper : a.point < b.point;
      });
      for (const auto& permit : permits) {
        if (state.is_auto(permit.point)) continue;
        std::vector<std::string> users = free_users(permit.point);
        if (users.empty()) continue;
        current = permit.point;
        state.execute_timepoint(users[pick(users)], permit.point, state.now());
        progressed = true;
        break;
      }
      if (progressed) continue;

      current.clear();
      state.advance_time(Bound(state.now().floor() + 1));
    }
  } catch (const ViolationError& e) {
    return {e.state(), StepFailure{state.trace().size(), current, e.code(), e.detail()}};
  } catch (const Error& e) {
    return {state, StepFailure{state.trace().size(), current, e.code(), e.detail()}};
  }
  return {state, std::nullopt};
}

ValidationReport validate_schedule(const Configuration& config, const std::vector<TraceRecord>& trace) {
  ValidationReport report;
  std::map<PointId, Bound> times;
  for (const auto& r : trace) {
    if (!times.emplace(r.point, r.time).second) report.add(r.point + " recorded twice");
  }
  const Stn& base = config.stnu.base();
  for (const auto& p : base.points()) {
    if (!times.count(p)) report.add(p + " never executed");
  }
  for (const auto& [p, t] : times) {
    if (!base.has_point(p)) report.add(p + " is not a point of the configuration");
  }
  for (const auto& link : base.links()) {
    auto a = times.find(link.from);
    auto b = times.find(link.to);
    if (a == times.end() || b == times.end()) continue;
    Bound d = b->second - a->second;
    if (d < link.lower || link.upper < d) {
      report.add("link " + link.from + " -> " + link.to + " " + range_text({link.lower, link.upper}) +
                 " violated by distance " + d.to_string());
    }
  }
  return report;
}

}  // namespace tacwf
