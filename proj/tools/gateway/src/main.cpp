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

// tacwf: check, simulate, replay, autorun and serve access-controlled workflows.
// Exit status: 0 ok, 1 check failure, 2 execution violation, 3 I/O or parse error.

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "tacwf/gateway/bundle.hpp"
#include "tacwf/gateway/check.hpp"
#include "tacwf/gateway/service.hpp"

namespace {

using namespace tacwf;
using namespace tacwf::gateway;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kViolation = 2;
constexpr int kIoOrParse = 3;

void emit(const Json& doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_json_file(out, doc);
  }
}

Json result_json(const ScenarioResult& r) {
  Json doc = trace_to_json(r.final_state.trace(), r.final_state.status());
  doc["detail"] = r.final_state.status_detail();
  if (r.failure) {
    doc["failure"] = {{"index", r.failure->index},
                      {"point", r.failure->point},
                      {"error", to_string(r.failure->code)},
                      {"detail", r.failure->detail}};
  }
  return doc;
}

int cmd_check(const std::string& bundle_path) {
  CheckReport r = run_checks(load_bundle(bundle_path));
  std::cout << r.report.dump(2) << "\n";
  return r.ok ? kOk : kCheckFailed;
}

int cmd_simulate(const std::string& bundle_path, const std::string& scenario_path, const std::string& out) {
  Bundle b = load_bundle(bundle_path);
  Scenario s;
  if (!scenario_path.empty()) {
    s = scenario_from_json(read_json_file(scenario_path));
  } else if (b.scenario) {
    s = *b.scenario;
  } else {
    throw Error(ErrorCode::kParseError, "bundle has no scenario and --scenario was not given");
  }
  Model m = build_model(b);
  ScenarioResult r = run_scenario(m.config, m.rules, s);
  emit(result_json(r), out);
  return r.ok() ? kOk : kViolation;
}

int cmd_autorun(const std::string& bundle_path, std::optional<std::uint64_t> seed, const std::string& out) {
  Model m = build_model(load_bundle(bundle_path));
  ScenarioResult r = auto_run(ExecutionState(m.config, m.rules), seed);
  emit(result_json(r), out);
  return r.ok() ? kOk : kViolation;
}

// Re-executes a recorded trace and compares the outcome record by record.
int cmd_replay(const std::string& bundle_path, const std::string& trace_path) {
  Model m = build_model(load_bundle(bundle_path));
  std::vector<TraceRecord> recorded = trace_from_json(read_json_file(trace_path));
  Scenario s;
  for (const auto& rec : recorded) {
    if (rec.user == kWorkflowUser) {
      if (rec.point != m.config->stnu.base().origin() && m.config->mapping.internal_points.count(rec.point)) {
        s.wf_choices[rec.point] = rec.time;
      }
    } else {
      s.steps.push_back({rec.user, rec.point, rec.time});
    }
  }
  ScenarioResult r = run_scenario(m.config, m.rules, s);
  ValidationReport schedule = validate_schedule(*m.config, recorded);
  const auto& got = r.final_state.trace();
  bool same = got.size() == recorded.size();
  for (std::size_t i = 0; same && i < got.size(); ++i) {
    same = got[i].user == recorded[i].user && got[i].point == recorded[i].point && got[i].time == recorded[i].time &&
           (recorded[i].auth.empty() || got[i].auth == recorded[i].auth);
  }
  Json doc = result_json(r);
  doc["matches"] = same;
  doc["schedule"] = schedule.issues;
  std::cout << doc.dump(2) << "\n";
  return r.ok() && same && schedule.ok() ? kOk : kViolation;
}

int cmd_serve(const std::string& bundle_path, int port, const std::string& host, const std::string& snapshots) {
  Model m = build_model(load_bundle(bundle_path));
  std::optional<std::filesystem::path> dir;
  if (!snapshots.empty()) dir = snapshots;
  SessionService service(std::move(m), dir);
  httplib::Server server;
  service.mount(server);
  std::cerr << "listening on " << host << ":" << port << "\n";
  return server.listen(host, port) ? kOk : kIoOrParse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal access-controlled workflow toolkit"};
  app.require_subcommand(1);

  std::string bundle;
  std::string scenario;
  std::string out;
  std::string trace;
  std::string host = "127.0.0.1";
  std::string snapshots;
  int port = 8080;
  std::optional<std::uint64_t> seed;

  auto* check = app.add_subcommand("check", "Validate a bundle and report every check");
  check->add_option("bundle", bundle, "bundle.json or its directory")->required();

  auto* simulate = app.add_subcommand("simulate", "Replay a scenario and print the trace");
  simulate->add_option("bundle", bundle, "bundle.json or its directory")->required();
  simulate->add_option("--scenario", scenario, "scenario document; defaults to the bundle's");
  simulate->add_option("--out", out, "write the trace here instead of stdout");

  auto* replay = app.add_subcommand("replay", "Re-execute a recorded trace");
  replay->add_option("bundle", bundle, "bundle.json or its directory")->required();
  replay->add_option("--trace", trace, "trace document")->required();

  auto* autorun = app.add_subcommand("autorun", "Drive a run with randomized choices");
  autorun->add_option("bundle", bundle, "bundle.json or its directory")->required();
  autorun->add_option("--seed", seed, "random seed; omit for the smallest choices");
  autorun->add_option("--out", out, "write the trace here instead of stdout");

  auto* serve = app.add_subcommand("serve", "Start the HTTP session service");
  serve->add_option("--bundle", bundle, "bundle.json or its directory")->required();
  serve->add_option("--port", port, "listening port");
  serve->add_option("--host", host, "listening address");
  serve->add_option("--snapshots", snapshots, "directory for per-session state snapshots");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(bundle);
    if (*simulate) return cmd_simulate(bundle, scenario, out);
    if (*replay) return cmd_replay(bundle, trace);
    if (*autorun) return cmd_autorun(bundle, seed, out);
    if (*serve) return cmd_serve(bundle, port, host, snapshots);
  } catch (const Error& e) {
    std::cerr << error_to_json(e).dump() << "\n";
    switch (e.code()) {
      case ErrorCode::kIoError:
      case ErrorCode::kParseError:
        return kIoOrParse;
      default:
        return kCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kIoOrParse;
  }
  return kOk;
}
