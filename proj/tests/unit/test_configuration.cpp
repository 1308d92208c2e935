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
#include "tacwf/configuration.hpp"

namespace tacwf {
namespace {

class ConfigurationTest : public ::testing::Test {
 protected:
  gateway::Bundle b = testing::load_case_study().bundle;

  ErrorCode build_error() const {
    try {
      build_configuration(b.workflow, b.trbac, b.window, b.assignments);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  }
};

TEST_F(ConfigurationTest, CandidatesPerTask) {
  auto c = interval_candidates(b.workflow, b.trbac, b.window, "T4");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].event, "P3");
  EXPECT_EQ(c[0].interval.lo, 15);
  EXPECT_EQ(c[0].interval.hi, 27);
  EXPECT_THROW(interval_candidates(b.workflow, b.trbac, b.window, "T9"), Error);
}

TEST_F(ConfigurationTest, EnablingLinksAndAccessPoints) {
  Configuration c = build_configuration(b.workflow, b.trbac, b.window);
  EXPECT_EQ(c.tasks, (std::vector<std::string>{"T1", "T2", "T3", "T4"}));
  EXPECT_EQ(c.access_points, (std::set<PointId>{"P1S", "P1E", "P2S", "P2E", "P3S", "P3E"}));
  EXPECT_EQ(c.enabling.at("T2").start, "P1S");
  EXPECT_EQ(c.enabling.at("T2").roles, (std::vector<std::string>{"R1"}));
  EXPECT_EQ(c.task_of("C3"), "T3");
  EXPECT_EQ(c.task_of("BS"), "");
  EXPECT_TRUE(c.is_task_point("A1"));
  EXPECT_FALSE(c.is_task_point("P1S"));
  EXPECT_TRUE(precheck_enabling_width(c).empty());
}

TEST_F(ConfigurationTest, AuthorizedUsers) {
  Configuration c = build_configuration(b.workflow, b.trbac, b.window);
  EXPECT_EQ(testing::cell(c.auth, "A1"), (std::vector<std::string>{"u1<>", "u2<>"}));
  EXPECT_EQ(testing::cell(c.auth, "A4"), (std::vector<std::string>{"u3<>", "u4<>"}));
  EXPECT_EQ(testing::cell(c.auth, "BS"), (std::vector<std::string>{"wf<>"}));
  EXPECT_EQ(testing::cell(c.auth, "P2E"), (std::vector<std::string>{"wf<>"}));
  EXPECT_EQ(testing::cell(c.auth, "Z"), (std::vector<std::string>{"wf<>"}));
}

TEST_F(ConfigurationTest, RoleWithoutUsers) {
  for (auto it = b.trbac.ua.begin(); it != b.trbac.ua.end();) {
    it = it->second == "R2" ? b.trbac.ua.erase(it) : std::next(it);
  }
  EXPECT_EQ(build_error(), ErrorCode::kEmptyAuthorizedSet);
}

TEST_F(ConfigurationTest, MissingPermission) {
  b.trbac.pa.erase({"R3", "T4"});
  EXPECT_EQ(build_error(), ErrorCode::kNoEnablingInterval);
}

TEST_F(ConfigurationTest, NoIntervalInWindow) {
  b.window = TimeWindow::parse("01/01/15:01", "01/01/15:05");
  EXPECT_EQ(build_error(), ErrorCode::kNoEnablingInterval);
}

TEST_F(ConfigurationTest, NarrowIntervalFailsPrecheck) {
  b.trbac.reb[0].expression = parse_periodic_expression("all.Days + {9}.Hours > 4.Hours");
  Configuration c = build_configuration(b.workflow, b.trbac, b.window);
  auto v = precheck_enabling_width(c);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], (WidthViolation{"T1", 4, 5}));
  EXPECT_FALSE(check_dynamic_controllability(c.stnu).controllable);
}

TEST_F(ConfigurationTest, SeveralDaysUseIndexedNames) {
  b.window = TimeWindow::parse("01/01/15:01", "03/01/15:03");
  WfStnuMapping m = wf_to_stnu(b.workflow);
  EXPECT_EQ(interval_candidates(b.workflow, b.trbac, b.window, "T1").size(), 2u);
  try {
    connect(m, b.workflow, b.trbac, b.window, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAmbiguousInterval);
  }
  Configuration c = build_configuration(b.workflow, b.trbac, b.window);
  EXPECT_EQ(c.enabling.at("T1").start, "P1S_1_9");
  EXPECT_EQ(c.enabling.at("T1").end, "P1E_1_9");
  EXPECT_TRUE(check_dynamic_controllability(c.stnu).controllable);
}

TEST_F(ConfigurationTest, ExplicitAssignment) {
  b.window = TimeWindow::parse("01/01/15:01", "03/01/15:03");
  auto second_day = [&](const std::string& task) {
    return interval_candidates(b.workflow, b.trbac, b.window, task).at(1);
  };
  IntervalAssignments a;
  for (const char* t : {"T1", "T2", "T3", "T4"}) a[t] = second_day(t);
  Configuration c = build_configuration(b.workflow, b.trbac, b.window, a);
  EXPECT_EQ(c.enabling.at("T1").source.interval.lo, 32);
  EXPECT_EQ(c.enabling.at("T1").start, "P1S_2_9");

  a["T1"].interval.z = 99;
  EXPECT_THROW(build_configuration(b.workflow, b.trbac, b.window, a), Error);
}

}  // namespace
}  // namespace tacwf
