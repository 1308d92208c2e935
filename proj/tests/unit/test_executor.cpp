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

#include <gtest/gtest.h>

#include "support.hpp"
#include "tacwf/executor.hpp"

namespace tacwf {
namespace {

using testing::cell;

class ExecutorTest : public ::testing::Test {
 protected:
  testing::CaseStudy cs = testing::load_case_study();

  ExecutionState fresh(const RuleSet& rules) const {
    ExecutionState s(cs.model.config, rules);
    s.advance_time(0);
    return s;
  }
  ExecutionState fresh() const { return fresh(cs.model.rules); }

  // Runs the reference steps up to, but excluding, `stop`.
  ExecutionState until(const PointId& stop) const {
    ExecutionState s = fresh();
    for (const auto& step : scenario_schedule(*cs.model.config, testing::load_scenario("scenario.json"))) {
      if (step.point == stop) break;
      if (cs.model.config->stnu.is_contingent(step.point)) {
        s.observe_contingent(step.user, step.point, step.time);
      } else {
        s.execute_timepoint(step.user, step.point, step.time);
      }
    }
    return s;
  }

  static ErrorCode code_of(const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  }

  static std::set<PointId> permitted(const ExecutionState& s) {
    std::set<PointId> out;
    for (const auto& p : s.live_enabled()) out.insert(p.point);
    return out;
  }
};

TEST_F(ExecutorTest, InitialState) {
  ExecutionState s(cs.model.config, cs.model.rules);
  EXPECT_EQ(s.status(), Status::kRunning);
  EXPECT_EQ(s.now(), Bound(0));
  EXPECT_TRUE(s.trace().empty());
  EXPECT_EQ(s.auth().size(), 19u);
  EXPECT_TRUE(s.is_auto("P1S"));
  EXPECT_TRUE(s.is_auto("Z"));
  EXPECT_FALSE(s.is_auto("BS"));
  EXPECT_EQ(s.users(), (std::set<std::string>{"u1", "u2", "u3", "u4", "u5", "wf"}));
}

TEST_F(ExecutorTest, EmptyRuleSetIsAccepted) {
  ExecutionState s(cs.model.config, RuleSet::make({}));
  EXPECT_EQ(s.status(), Status::kRunning);
}

TEST_F(ExecutorTest, UnsafeRulesRejected) {
  std::vector<PropagationRule> rules = cs.model.rules.rules;
  rules.push_back({"x1", "A1", SecurityConstraint::type2("C1", 2, Op::kLe), {"C1"}, Mode::kDifferent});
  EXPECT_EQ(code_of([&] { ExecutionState(cs.model.config, RuleSet::make(rules)); }), ErrorCode::kUnsafeRuleSet);
}

TEST_F(ExecutorTest, NothingLiveBeforeFirstAccessPoint) {
  ExecutionState s = fresh();
  EXPECT_TRUE(permitted(s).empty());
  EXPECT_EQ(s.range("A1").lower, Bound(8));
  s.advance_time(7);
  EXPECT_TRUE(permitted(s).empty());
  s.advance_time(8);
  EXPECT_EQ(s.trace().back().point, "P1S");
  EXPECT_EQ(s.trace().back().time, Bound(8));
  EXPECT_EQ(permitted(s), (std::set<PointId>{"A1"}));
}

TEST_F(ExecutorTest, AccessPointsAtFixedTimes) {
  ExecutionState s = until("A2");
  s.advance_time(15);
  std::vector<std::string> tail;
  for (std::size_t i = s.trace().size() - 2; i < s.trace().size(); ++i) tail.push_back(s.trace()[i].point);
  EXPECT_EQ(tail, (std::vector<std::string>{"P2S", "P3S"}));
  EXPECT_EQ(s.time_of("P3S"), Bound(15));
}

TEST_F(ExecutorTest, OwnerEndsRuleBlocksOtherUser) {
  ExecutionState s = until("C1");
  EXPECT_EQ(cell(s.auth(), "C1"), (std::vector<std::string>{"u1<C1,<=>", "u2<>"}));
  EXPECT_EQ(code_of([&] { s.observe_contingent("u1", "C1", 12); }), ErrorCode::kUserBlocked);
  EXPECT_EQ(s.pending().count("C1"), 1u);
}

TEST_F(ExecutorTest, SeparationRuleFiresOnCompletion) {
  ExecutionState s = until("C1");
  s.observe_contingent("u2", "C1", 12);
  EXPECT_EQ(cell(s.auth(), "A2"), (std::vector<std::string>{"u1<>", "u2<14,<=>"}));
  EXPECT_EQ(cell(s.auth(), "C1"), (std::vector<std::string>{"u1<12,<=>", "u2<>"}));
  EXPECT_EQ(code_of([&] { s.execute_timepoint("u2", "A2", 14); }), ErrorCode::kUserBlocked);
  ExecutionState other = s;
  other.execute_timepoint("u1", "A2", 14);
  EXPECT_EQ(other.time_of("A2"), Bound(14));
}

TEST_F(ExecutorTest, OneTaskAtATimeBlocksSecondStart) {
  ExecutionState s = until("A4");
  EXPECT_EQ(cell(s.auth(), "A4"), (std::vector<std::string>{"u3<C3,<=>", "u4<>"}));
  EXPECT_EQ(code_of([&] { s.execute_timepoint("u3", "A4", 22); }), ErrorCode::kUserBlocked);
}

TEST_F(ExecutorTest, BranchEnabledAfterSecondTask) {
  ExecutionState s = until("BS");
  s.advance_time(21);
  EXPECT_TRUE(permitted(s).count("BS"));
  EXPECT_FALSE(permitted(s).count("BE"));
  EXPECT_FALSE(s.is_enabled("A3"));
}

TEST_F(ExecutorTest, AuthorizationErrors) {
  ExecutionState s = until("A1");
  s.advance_time(8);
  EXPECT_EQ(code_of([&] { s.execute_timepoint("u3", "A1", 8); }), ErrorCode::kUserNotAuthorized);
  EXPECT_EQ(code_of([&] { s.execute_timepoint("wf", "A1", 8); }), ErrorCode::kWrongOwner);
  EXPECT_EQ(code_of([&] { s.execute_timepoint("u2", "A2", 8); }), ErrorCode::kNotEnabled);
  EXPECT_EQ(code_of([&] { s.execute_timepoint("u2", "Q", 8); }), ErrorCode::kUnknownPoint);
  EXPECT_EQ(code_of([&] { s.execute_timepoint("u2", "A1", 7); }), ErrorCode::kTimeOutOfRange);
  EXPECT_EQ(code_of([&] { s.observe_contingent("u2", "C1", 12); }), ErrorCode::kNotPending);
  EXPECT_EQ(s.trace().size(), 2u);
}

TEST_F(ExecutorTest, WorkflowPointsNeedWorkflowUser) {
  ExecutionState s = until("BS");
  EXPECT_EQ(code_of([&] { s.execute_timepoint("u1", "BS", 21); }), ErrorCode::kWrongOwner);
  s.execute_timepoint("wf", "BS", 21);
  EXPECT_EQ(s.time_of("BS"), Bound(21));
}

TEST_F(ExecutorTest, ContingentOutsideWindowRaisesViolation) {
  ExecutionState s = until("C1");
  try {
    s.observe_contingent("u2", "C1", 14);
    FAIL();
  } catch (const ViolationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutsideContingentWindow);
    EXPECT_EQ(e.state().status(), Status::kViolationRaised);
  }
  EXPECT_EQ(s.status(), Status::kRunning);
  EXPECT_FALSE(s.executed("C1"));
}

TEST_F(ExecutorTest, MissedDeadline) {
  ExecutionState s = until("A1");
  try {
    s.advance_time(20);
    FAIL();
  } catch (const ViolationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDeadlineMissed);
    EXPECT_EQ(e.state().status(), Status::kViolationRaised);
  }
  EXPECT_EQ(s.status(), Status::kRunning);
  EXPECT_EQ(s.now(), Bound(0));
}

TEST_F(ExecutorTest, CompletedStateHasNoPermits) {
  ScenarioResult r = run_scenario(cs.model.config, cs.model.rules, testing::load_scenario("scenario.json"));
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.final_state.live_enabled().empty());
  EXPECT_EQ(code_of([&] { ExecutionState s = r.final_state; s.advance_time(30); }), ErrorCode::kNotRunning);
  EXPECT_TRUE(validate_schedule(*cs.model.config, r.final_state.trace()).ok());
}

TEST_F(ExecutorTest, TraceTimesNonDecreasing) {
  ScenarioResult r = run_scenario(cs.model.config, cs.model.rules, testing::load_scenario("scenario.json"));
  const auto& t = r.final_state.trace();
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LE(t[i - 1].time, t[i].time);
}

TEST_F(ExecutorTest, ScenarioAbortsOnBlockedStep) {
  Scenario s = testing::load_scenario("scenario.json");
  s.steps[2].time = 14;
  ScenarioResult r = run_scenario(cs.model.config, cs.model.rules, s);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.failure->code, ErrorCode::kUserBlocked);
  EXPECT_EQ(r.failure->point, "A2");
}

TEST_F(ExecutorTest, ScenarioNeedsWorkflowChoices) {
  Scenario s = testing::load_scenario("scenario.json");
  s.wf_choices.erase("BE");
  EXPECT_EQ(code_of([&] { run_scenario(cs.model.config, cs.model.rules, s); }), ErrorCode::kMissingWfChoice);
}

TEST_F(ExecutorTest, ImplicitContingentsUseDurations) {
  Scenario s = testing::load_scenario("scenario.json");
  std::erase_if(s.steps, [](const ScenarioStep& st) { return st.point.front() == 'C'; });
  ScenarioResult r = run_scenario(cs.model.config, cs.model.rules, s);
  ASSERT_TRUE(r.ok()) << (r.failure ? r.failure->detail : r.final_state.status_detail());
  EXPECT_EQ(r.final_state.time_of("C2"), Bound(20));
  EXPECT_EQ(r.final_state.trace()[3].user, "u2");
}

TEST_F(ExecutorTest, ValidateScheduleFindsLateCompletion) {
  ScenarioResult r = run_scenario(cs.model.config, cs.model.rules, testing::load_scenario("scenario.json"));
  std::vector<TraceRecord> trace = r.final_state.trace();
  for (auto& rec : trace) {
    if (rec.point == "C2") rec.time = 21;
  }
  ValidationReport v = validate_schedule(*cs.model.config, trace);
  EXPECT_FALSE(v.ok());
  bool mentions = false;
  for (const auto& i : v.issues) mentions |= i.find("C2") != std::string::npos && i.find("P1E") != std::string::npos;
  EXPECT_TRUE(mentions);
}

TEST_F(ExecutorTest, SameModeOnlyTouchesExecutor) {
  ExecutionState s = until("A3");
  s.execute_timepoint("u3", "A3", 22);
  for (const auto& e : s.auth().at("A4")) EXPECT_EQ(e.constraint.has_value(), e.user == "u3");
  for (const auto& e : s.auth().at("C3")) EXPECT_EQ(e.constraint.has_value(), e.user != "u3");
}

TEST_F(ExecutorTest, AutoRunIsReproducible) {
  ScenarioResult a = auto_run(ExecutionState(cs.model.config, cs.model.rules), 17);
  ScenarioResult b = auto_run(ExecutionState(cs.model.config, cs.model.rules), 17);
  ASSERT_EQ(a.final_state.status(), Status::kCompleted);
  EXPECT_EQ(a.final_state.trace(), b.final_state.trace());
  EXPECT_TRUE(validate_schedule(*cs.model.config, a.final_state.trace()).ok());
}

TEST_F(ExecutorTest, AutoRunWithoutSeedTakesSmallestChoices) {
  ScenarioResult r = auto_run(ExecutionState(cs.model.config, cs.model.rules));
  ASSERT_EQ(r.final_state.status(), Status::kCompleted);
  EXPECT_EQ(r.final_state.trace()[2].user, "u1");
  EXPECT_EQ(r.final_state.time_of("A1"), Bound(8));
}

}  // namespace
}  // namespace tacwf
