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
#include "tacwf/trbac.hpp"

namespace tacwf {
namespace {

TrbacModel case_model() { return testing::load_case_study().bundle.trbac; }

bool mentions(const ValidationReport& r, const std::string& needle) {
  for (const auto& i : r.issues) {
    if (i.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(Trbac, CaseStudyIsValid) {
  ValidationReport r = validate_trbac(case_model());
  EXPECT_TRUE(r.ok()) << (r.issues.empty() ? "" : r.issues.front());
}

TEST(Trbac, UsersOfRole) {
  TrbacModel m = case_model();
  EXPECT_EQ(m.users_of("R1"), (std::set<std::string>{"u1", "u2"}));
  EXPECT_EQ(m.users_of("R3"), (std::set<std::string>{"u3", "u4"}));
  EXPECT_TRUE(m.permits("R2", "T3"));
  EXPECT_FALSE(m.permits("R2", "T4"));
}

TEST(Trbac, OverlappingEnablingForSameRole) {
  TrbacModel m = case_model();
  PeriodicEvent extra = m.reb.front();
  extra.name = "P9";
  extra.expression = parse_periodic_expression("all.Days + {12}.Hours > 4.Hours");
  m.reb.push_back(extra);
  EXPECT_FALSE(validate_trbac(m).ok());
}

TEST(Trbac, DisjointEnablingForSameRoleIsFine) {
  TrbacModel m = case_model();
  PeriodicEvent extra = m.reb.front();
  extra.name = "P9";
  extra.expression = parse_periodic_expression("all.Days + {1}.Hours > 4.Hours");
  m.reb.push_back(extra);
  EXPECT_TRUE(validate_trbac(m).ok());
}

TEST(Trbac, ReferentialIntegrity) {
  TrbacModel m = case_model();
  m.pa.insert({"R1", "T9"});
  EXPECT_TRUE(mentions(validate_trbac(m), "T9"));

  m = case_model();
  m.ua.insert({"u9", "R1"});
  EXPECT_TRUE(mentions(validate_trbac(m), "u9"));

  m = case_model();
  m.reb.front().role = "R9";
  EXPECT_TRUE(mentions(validate_trbac(m), "R9"));
}

TEST(Trbac, ReservedWorkflowUser) {
  TrbacModel m = case_model();
  m.users.insert("wf");
  EXPECT_FALSE(validate_trbac(m).ok());
}

TEST(Trbac, UnsupportedFeatures) {
  TrbacModel m = case_model();
  m.reb.front().disable = true;
  EXPECT_FALSE(validate_trbac(m).ok());

  m = case_model();
  m.reb.front().triggers.push_back("enable R2 -> enable R3");
  EXPECT_FALSE(validate_trbac(m).ok());

  m = case_model();
  m.reb.front().requests.push_back("u1 activate R1");
  EXPECT_FALSE(validate_trbac(m).ok());
}

TEST(Trbac, BadDates) {
  TrbacModel m = case_model();
  m.reb.front().begin = "40/01/15";
  EXPECT_FALSE(validate_trbac(m).ok());
}

TEST(EventIntervals, ClippedToEventInterval) {
  TrbacModel m = case_model();
  TimeWindow w = TimeWindow::parse("01/01/15", "03/01/15");
  EXPECT_EQ(event_intervals(m.reb.front(), w).size(), 3u);
  m.reb.front().begin = "02/01/15";
  auto spans = event_intervals(m.reb.front(), w);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans.front().lo, 32);
  m.reb.front().end = "01/01/15";
  EXPECT_TRUE(event_intervals(m.reb.front(), w).empty());
}

}  // namespace
}  // namespace tacwf
