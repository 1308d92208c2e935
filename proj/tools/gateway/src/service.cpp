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

#include "tacwf/gateway/service.hpp"

#include <httplib.h>

namespace tacwf::gateway {
namespace {

Reply error_reply(int status, const Error& e) { return {status, error_to_json(e)}; }

Reply not_found(const std::string& id) { return {404, {{"error", "UnknownSession"}, {"detail", id}}}; }

struct StepBody {
  std::string user;
  PointId point;
  Bound time;
};

StepBody step_body(const Json& body) {
  try {
    return {body.at("user").get<std::string>(), body.at("point").get<std::string>(), bound_from_json(body.at("time"))};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

Bound time_body(const Json& body) {
  try {
    return bound_from_json(body.at("time"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace

SessionService::SessionService(Model model, std::optional<std::filesystem::path> snapshot_dir)
    : model_(std::move(model)), snapshot_dir_(std::move(snapshot_dir)) {
  if (snapshot_dir_) std::filesystem::create_directories(*snapshot_dir_);
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void SessionService::snapshot(const std::string& id, const ExecutionState& s) const {
  if (snapshot_dir_) write_json_file(*snapshot_dir_ / (id + ".json"), state_to_json(s));
}

Reply SessionService::add_session(ExecutionState state) {
  auto session = std::make_shared<Session>();
  session->state.emplace(std::move(state));
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "s" + std::to_string(next_id_++);
    sessions_.emplace(id, session);
  }
  std::lock_guard lock(session->mu);
  snapshot(id, *session->state);
  return {201, {{"id", id}, {"state", state_to_json(*session->state)}}};
}

Reply SessionService::create() {
  try {
    ExecutionState s(model_.config, model_.rules);
    s.advance_time(Bound(0));
    return add_session(std::move(s));
  } catch (const Error& e) {
    return error_reply(409, e);
  }
}

Reply SessionService::state(const std::string& id) const {
  auto session = find(id);
  if (!session) return not_found(id);
  std::lock_guard lock(session->mu);
  return {200, state_to_json(*session->state)};
}

Reply SessionService::mutate(const std::string& id, const std::function<void(ExecutionState&)>& op) {
  auto session = find(id);
  if (!session) return not_found(id);
  std::lock_guard lock(session->mu);
  ExecutionState next = *session->state;
  try {
    op(next);
  } catch (const Error& e) {
    return error_reply(e.code() == ErrorCode::kParseError ? 400 : 409, e);
  }
  session->state.emplace(std::move(next));
  snapshot(id, *session->state);
  return {200, state_to_json(*session->state)};
}

Reply SessionService::execute(const std::string& id, const Json& body) {
  return mutate(id, [&](ExecutionState& s) {
    StepBody b = step_body(body);
    s.execute_timepoint(b.user, b.point, b.time);
  });
}

Reply SessionService::observe(const std::string& id, const Json& body) {
  return mutate(id, [&](ExecutionState& s) {
    StepBody b = step_body(body);
    s.observe_contingent(b.user, b.point, b.time);
  });
}

Reply SessionService::advance(const std::string& id, const Json& body) {
  return mutate(id, [&](ExecutionState& s) { s.advance_time(time_body(body)); });
}

Reply SessionService::reset(const std::string& id) {
  return mutate(id, [&](ExecutionState& s) {
    ExecutionState fresh(model_.config, model_.rules);
    fresh.advance_time(Bound(0));
    s = std::move(fresh);
  });
}

Reply SessionService::fork(const std::string& id) {
  auto session = find(id);
  if (!session) return not_found(id);
  std::optional<ExecutionState> copy;
  {
    std::lock_guard lock(session->mu);
    copy = *session->state;
  }
  return add_session(std::move(*copy));
}

Reply SessionService::model() const {
  return {200, {{"configuration", configuration_to_json(*model_.config)}, {"rules", rules_to_json(model_.rules)}}};
}

void SessionService::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto with_body = [send](const httplib::Request& req, httplib::Response& res, auto&& fn) {
    Json body = Json::object();
    if (!req.body.empty()) {
      body = Json::parse(req.body, nullptr, false);
      if (body.is_discarded()) {
        send(res, {400, {{"error", "ParseError"}, {"detail", "request body is not JSON"}}});
        return;
      }
    }
    send(res, fn(body));
  };

  server.Post("/sessions", [this, send](const httplib::Request&, httplib::Response& res) { send(res, create()); });
  server.Get(R"(/sessions/([^/]+)/state)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, state(req.matches[1]));
  });
  server.Post(R"(/sessions/([^/]+)/execute)", [this, with_body](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const Json& b) { return execute(req.matches[1], b); });
  });
  server.Post(R"(/sessions/([^/]+)/observe)", [this, with_body](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const Json& b) { return observe(req.matches[1], b); });
  });
  server.Post(R"(/sessions/([^/]+)/advance)", [this, with_body](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const Json& b) { return advance(req.matches[1], b); });
  });
  server.Post(R"(/sessions/([^/]+)/reset)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, reset(req.matches[1]));
  });
  server.Post(R"(/sessions/([^/]+)/fork)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, fork(req.matches[1]));
  });
  server.Get("/model", [this, send](const httplib::Request&, httplib::Response& res) { send(res, model()); });
}

}  // namespace tacwf::gateway
