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
#include "tacwf/json_io.hpp"

namespace tacwf {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kNotRunning;
}

TEST(JsonIo, Bounds) {
  EXPECT_EQ(bound_to_json(Bound(12)), Json(12));
  EXPECT_EQ(bound_to_json(Bound(7, 2)), Json("7/2"));
  EXPECT_EQ(bound_to_json(Bound::pos_inf()), Json("inf"));
  EXPECT_EQ(bound_from_json(Json("7/2")), Bound(7, 2));
  EXPECT_EQ(bound_from_json(Json(2.5)), Bound(5, 2));
  EXPECT_EQ(bound_from_json(Json(-4)), Bound(-4));
  EXPECT_EQ(code_of([] { bound_from_json(Json::array()); }), ErrorCode::kParseError);
}

TEST(JsonIo, TrbacRoundTrip) {
  TrbacModel m = testing::load_case_study().bundle.trbac;
  Json once = trbac_to_json(m);
  EXPECT_EQ(trbac_to_json(trbac_from_json(once)), once);
  EXPECT_EQ(trbac_from_json(once).reb[1].expression.to_string(), "all.Days + {16}.Hours > 9.Hours");
}

TEST(JsonIo, TrbacObjectPairsAndInferredPerms) {
  Json j = Json::parse(R"({
    "users": ["a"], "roles": ["R"],
    "ua": [{"user": "a", "role": "R"}],
    "pa": [{"role": "R", "task": "T"}],
    "reb": [{"name": "P", "interval": {"begin": "01/01/15", "end": "inf"},
             "expression": "all.Days > 24.Hours", "enable": "R"}]
  })");
  TrbacModel m = trbac_from_json(j);
  EXPECT_TRUE(m.perms.count("T"));
  EXPECT_TRUE(m.ua.count({"a", "R"}));
  EXPECT_EQ(m.reb[0].role, "R");
}

TEST(JsonIo, TrbacBadExpression) {
  Json j = trbac_to_json(testing::load_case_study().bundle.trbac);
  j["reb"][0]["expression"] = "{9}.Hours > 1.Hours";
  EXPECT_EQ(code_of([&] { trbac_from_json(j); }), ErrorCode::kFirstTermNotAll);
}

TEST(JsonIo, PoliciesRoundTrip) {
  auto p = testing::load_case_study().bundle.policies;
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[2].rest, Bound(2));
  EXPECT_EQ(policies_to_json(policies_from_json(policies_to_json(p))), policies_to_json(p));
  EXPECT_EQ(policies_from_json(Json{{"policies", policies_to_json(p)}}).size(), 3u);
  EXPECT_EQ(code_of([] { policies_from_json(Json::parse(R"([{"kind": "nope"}])")); }), ErrorCode::kParseError);
}

TEST(JsonIo, ScenarioRoundTrip) {
  Scenario s = testing::load_scenario("scenario.json");
  EXPECT_EQ(s.steps.size(), 8u);
  EXPECT_EQ(s.wf_choices.at("ES"), Bound(26));
  EXPECT_EQ(scenario_to_json(scenario_from_json(scenario_to_json(s))), scenario_to_json(s));
}

TEST(JsonIo, WindowAndAssignments) {
  TimeWindow w = window_from_json(Json{{"begin", "01/01/15:01"}, {"end", "02/01/15:03"}});
  EXPECT_EQ(w.end, Bound(27));
  IntervalAssignments a = assignments_from_json(Json::parse(R"({"T1": {"event": "P1", "n": 2, "z": 9}})"));
  EXPECT_EQ(a.at("T1").event, "P1");
  EXPECT_EQ(a.at("T1").interval.period, 2);
  EXPECT_EQ(code_of([] { window_from_json(Json::object()); }), ErrorCode::kParseError);
}

TEST(JsonIo, TraceRoundTrip) {
  auto cs = testing::load_case_study();
  ScenarioResult r = run_scenario(cs.model.config, cs.model.rules, testing::load_scenario("scenario.json"));
  Json j = trace_to_json(r.final_state.trace(), r.final_state.status());
  EXPECT_EQ(j["status"], "Completed");
  std::vector<TraceRecord> back = trace_from_json(j);
  EXPECT_EQ(back, r.final_state.trace());
  EXPECT_EQ(j["records"][3]["auth"]["A2"][1], (Json{{"user", "u2"}, {"constraint", "14,<="}}));
}

TEST(JsonIo, SerializationIsDeterministic) {
  auto cs = testing::load_case_study();
  std::string a = configuration_to_json(*cs.model.config).dump();
  std::string b = configuration_to_json(*testing::load_case_study().model.config).dump();
  EXPECT_EQ(a, b);
  Json c = Json::parse(a);
  EXPECT_EQ(c["accessPoints"].size(), 6u);
  EXPECT_EQ(c["auth"]["BS"][0]["user"], "wf");
}

TEST(JsonIo, StateShape) {
  auto cs = testing::load_case_study();
  ExecutionState s(cs.model.config, cs.model.rules);
  s.advance_time(8);
  Json j = state_to_json(s);
  EXPECT_EQ(j["now"], 8);
  EXPECT_EQ(j["status"], "Running");
  ASSERT_EQ(j["permits"].size(), 1u);
  EXPECT_EQ(j["permits"][0]["point"], "A1");
  std::size_t authorized = 0;
  for (const auto& u : j["permits"][0]["users"]) authorized += u["verdict"] == "authorized";
  EXPECT_EQ(authorized, 2u);
  EXPECT_EQ(j["trace"].size(), 2u) << j["trace"].dump();
}

TEST(JsonIo, Files) {
  auto path = std::filesystem::temp_directory_path() / "tacwf_json_io_test.json";
  write_json_file(path, Json{{"a", 1}});
  EXPECT_EQ(read_json_file(path), (Json{{"a", 1}}));
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { read_json_file(path); }), ErrorCode::kIoError);
}

TEST(JsonIo, ErrorShape) {
  EXPECT_EQ(error_to_json(Error(ErrorCode::kUserBlocked, "u1<C1,<=>")),
            (Json{{"error", "UserBlocked"}, {"detail", "u1<C1,<=>"}}));
}

}  // namespace
}  // namespace tacwf
