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

#ifndef TACWF_GATEWAY_SERVICE_HPP_
#define TACWF_GATEWAY_SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "tacwf/gateway/bundle.hpp"

namespace httplib {
class Server;
}

namespace tacwf::gateway {

struct Reply {
  int status = 200;
  Json body;
};

// Sessions over one model. Each session has its own lock; a request that
// fails leaves its session unchanged.
//
//   POST /sessions                  -> 201 {id, state}
//   GET  /sessions/{id}/state       -> state
//   POST /sessions/{id}/execute     {user, point, time}
//   POST /sessions/{id}/observe     {user, point, time}
//   POST /sessions/{id}/advance     {time}
//   POST /sessions/{id}/reset
//   POST /sessions/{id}/fork        -> 201 {id, state}
//   GET  /model                     -> {configuration, rules}
//
// Errors are {error, detail}: 404 for unknown sessions, 400 for malformed
// bodies, 409 for everything the executor refuses.
class SessionService {
 public:
  explicit SessionService(Model model, std::optional<std::filesystem::path> snapshot_dir = std::nullopt);

  Reply create();
  Reply state(const std::string& id) const;
  Reply execute(const std::string& id, const Json& body);
  Reply observe(const std::string& id, const Json& body);
  Reply advance(const std::string& id, const Json& body);
  Reply reset(const std::string& id);
  Reply fork(const std::string& id);
  Reply model() const;

  void mount(httplib::Server& server);

 private:
  struct Session {
    mutable std::mutex mu;
    std::optional<ExecutionState> state;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  Reply add_session(ExecutionState state);
  Reply mutate(const std::string& id, const std::function<void(ExecutionState&)>& op);
  void snapshot(const std::string& id, const ExecutionState& s) const;

  Model model_;
  std::optional<std::filesystem::path> snapshot_dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace tacwf::gateway

#endif  // TACWF_GATEWAY_SERVICE_HPP_
