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

#include "tacwf/gateway/bundle.hpp"

namespace tacwf::gateway {
namespace {

Json member(const Json& doc, const std::filesystem::path& root, const char* key) {
  const Json& v = doc.at(key);
  if (v.is_string()) return read_json_file(root / v.get<std::string>());
  return v;
}

}  // namespace

Bundle load_bundle(const std::filesystem::path& path) {
  std::filesystem::path file = path;
  if (std::filesystem::is_directory(path)) file = path / "bundle.json";
  const Json doc = read_json_file(file);
  Bundle b;
  b.root = file.parent_path();
  try {
    b.workflow = workflow_from_json(member(doc, b.root, "workflow"));
    b.trbac = trbac_from_json(member(doc, b.root, "trbac"));
    b.policies = doc.contains("policies") ? policies_from_json(member(doc, b.root, "policies"))
                                          : std::vector<PolicyDecl>{};
    b.window = window_from_json(member(doc, b.root, "window"));
    if (doc.contains("assignments")) b.assignments = assignments_from_json(member(doc, b.root, "assignments"));
    if (doc.contains("scenario")) b.scenario = scenario_from_json(member(doc, b.root, "scenario"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, file.string() + ": " + e.what());
  }
  return b;
}

Model build_model(const Bundle& bundle) {
  auto config = std::make_shared<const Configuration>(
      build_configuration(bundle.workflow, bundle.trbac, bundle.window, bundle.assignments));
  RuleSet rules = compile_policies(bundle.policies, *config);
  return {std::move(config), std::move(rules)};
}

}  // namespace tacwf::gateway
