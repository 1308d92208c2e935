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

#include <httplib.h>

#include <thread>

#include "support.hpp"
#include "tacwf/gateway/check.hpp"
#include "tacwf/gateway/service.hpp"

namespace tacwf::gateway {
namespace {

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service_ = std::make_unique<SessionService>(testing::load_case_study().model);
    service_->mount(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  std::pair<int, Json> post(const std::string& path, const std::string& body = "{}") {
    auto res = client_->Post(path, body, "application/json");
    if (!res) return {0, Json()};
    return {res->status, Json::parse(res->body)};
  }
  std::pair<int, Json> get(const std::string& path) {
    auto res = client_->Get(path);
    if (!res) return {0, Json()};
    return {res->status, Json::parse(res->body)};
  }
  std::string open_session() { return post("/sessions").second["id"]; }
  static std::string step(const std::string& user, const std::string& point, int time) {
    return Json{{"user", user}, {"point", point}, {"time", time}}.dump();
  }

  std::unique_ptr<SessionService> service_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ServiceTest, CreateAndReadState) {
  auto [code, body] = post("/sessions");
  EXPECT_EQ(code, 201);
  EXPECT_EQ(body["id"], "s1");
  EXPECT_EQ(body["state"]["status"], "Running");
  auto [c2, state] = get("/sessions/s1/state");
  EXPECT_EQ(c2, 200);
  EXPECT_EQ(state, body["state"]);
  EXPECT_EQ(state["trace"].size(), 1u);
}

TEST_F(ServiceTest, UnknownSession) {
  auto [code, body] = get("/sessions/nope/state");
  EXPECT_EQ(code, 404);
  EXPECT_EQ(body["error"], "UnknownSession");
  EXPECT_EQ(post("/sessions/nope/advance", R"({"time": 3})").first, 404);
}

TEST_F(ServiceTest, ExecuteAndObserve) {
  std::string id = open_session();
  EXPECT_EQ(post("/sessions/" + id + "/advance", R"({"time": 8})").first, 200);
  auto [c1, s1] = post("/sessions/" + id + "/execute", step("u2", "A1", 8));
  EXPECT_EQ(c1, 200);
  EXPECT_EQ(s1["auth"]["C1"][0], (Json{{"user", "u1"}, {"constraint", "C1,<="}}));
  EXPECT_EQ(s1["pending"][0]["contingent"], "C1");
  auto [c2, s2] = post("/sessions/" + id + "/observe", step("u2", "C1", 12));
  EXPECT_EQ(c2, 200);
  EXPECT_EQ(s2["auth"]["A2"][1], (Json{{"user", "u2"}, {"constraint", "14,<="}}));
}

TEST_F(ServiceTest, RefusalsLeaveStateUntouched) {
  std::string id = open_session();
  post("/sessions/" + id + "/execute", step("u2", "A1", 8));
  Json before = get("/sessions/" + id + "/state").second;

  auto [c1, e1] = post("/sessions/" + id + "/observe", step("u1", "C1", 12));
  EXPECT_EQ(c1, 409);
  EXPECT_EQ(e1["error"], "UserBlocked");
  EXPECT_NE(e1["detail"].get<std::string>().find("C1,<="), std::string::npos);

  auto [c2, e2] = post("/sessions/" + id + "/observe", step("u2", "C1", 14));
  EXPECT_EQ(c2, 409);
  EXPECT_EQ(e2["error"], "OutsideContingentWindow");

  auto [c3, e3] = post("/sessions/" + id + "/advance", R"({"time": 30})");
  EXPECT_EQ(c3, 409);
  EXPECT_EQ(e3["error"], "DeadlineMissed");

  EXPECT_EQ(get("/sessions/" + id + "/state").second, before);
}

TEST_F(ServiceTest, MalformedBodies) {
  std::string id = open_session();
  EXPECT_EQ(post("/sessions/" + id + "/execute", "not json").first, 400);
  auto [code, body] = post("/sessions/" + id + "/execute", R"({"user": "u2"})");
  EXPECT_EQ(code, 400);
  EXPECT_EQ(body["error"], "ParseError");
}

TEST_F(ServiceTest, ResetAndFork) {
  std::string id = open_session();
  post("/sessions/" + id + "/execute", step("u2", "A1", 8));
  auto [fc, forked] = post("/sessions/" + id + "/fork");
  EXPECT_EQ(fc, 201);
  std::string other = forked["id"];
  EXPECT_NE(other, id);
  EXPECT_EQ(forked["state"], get("/sessions/" + id + "/state").second);

  auto [rc, reset] = post("/sessions/" + id + "/reset");
  EXPECT_EQ(rc, 200);
  EXPECT_EQ(reset["trace"].size(), 1u);
  EXPECT_EQ(get("/sessions/" + other + "/state").second["trace"].size(), 3u);
}

TEST_F(ServiceTest, Model) {
  auto [code, body] = get("/model");
  EXPECT_EQ(code, 200);
  EXPECT_EQ(body["rules"]["rules"].size(), 7u);
  EXPECT_TRUE(body["rules"]["safe"]);
  EXPECT_EQ(body["configuration"]["auth"]["A3"].size(), 2u);
}

TEST(ServiceDirect, SnapshotsAreWritten) {
  auto dir = std::filesystem::temp_directory_path() / "tacwf_gateway_snapshots";
  std::filesystem::remove_all(dir);
  SessionService service(testing::load_case_study().model, dir);
  Reply r = service.create();
  ASSERT_EQ(r.status, 201);
  service.advance("s1", Json{{"time", 8}});
  Json snap = read_json_file(dir / "s1.json");
  EXPECT_EQ(snap["now"], 8);
  std::filesystem::remove_all(dir);
}

TEST(Bundle, InlineMembers) {
  auto root = testing::case_study_dir();
  Json doc = {{"workflow", read_json_file(root / "workflow.json")},
              {"trbac", "trbac.json"},
              {"policies", Json::array()},
              {"window", {{"begin", "01/01/15:01"}, {"end", "02/01/15:03"}}}};
  auto dir = std::filesystem::temp_directory_path() / "tacwf_inline_bundle";
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(root / "trbac.json", dir / "trbac.json",
                             std::filesystem::copy_options::overwrite_existing);
  write_json_file(dir / "bundle.json", doc);
  Bundle b = load_bundle(dir / "bundle.json");
  EXPECT_EQ(b.workflow.tasks.size(), 4u);
  EXPECT_TRUE(b.policies.empty());
  EXPECT_FALSE(b.scenario);
  std::filesystem::remove_all(dir);
}

TEST(Bundle, MissingFile) {
  try {
    load_bundle("/nonexistent/bundle.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(Check, CaseStudyPasses) {
  CheckReport r = run_checks(load_bundle(testing::case_study_dir()));
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.report["dc"]["controllable"]);
  EXPECT_TRUE(r.report["widths"].empty());
  EXPECT_EQ(r.report["auth"]["C4"][1]["user"], "u4");
}

TEST(Check, NarrowIntervalReported) {
  Bundle b = load_bundle(testing::case_study_dir());
  b.trbac.reb[0].expression = parse_periodic_expression("all.Days + {9}.Hours > 4.Hours");
  CheckReport r = run_checks(b);
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.report["widths"].size(), 2u);
  EXPECT_EQ(r.report["widths"][0], (Json{{"task", "T1"}, {"width", 4}, {"upper", 5}}));
}

TEST(Check, ConfigurationErrorReported) {
  Bundle b = load_bundle(testing::case_study_dir());
  b.trbac.pa.erase({"R1", "T1"});
  CheckReport r = run_checks(b);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.report["configuration"]["error"], "NoEnablingInterval");
}

}  // namespace
}  // namespace tacwf::gateway
