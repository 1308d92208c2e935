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

#ifndef TACWF_GATEWAY_BUNDLE_HPP_
#define TACWF_GATEWAY_BUNDLE_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "tacwf/json_io.hpp"

namespace tacwf::gateway {

// A bundle is a bundle.json whose members are either inline documents or
// paths relative to the bundle's directory.
struct Bundle {
  std::filesystem::path root;
  Workflow workflow;
  TrbacModel trbac;
  std::vector<PolicyDecl> policies;
  TimeWindow window;
  IntervalAssignments assignments;
  std::optional<Scenario> scenario;
};

// Accepts the bundle.json file or its directory.
// Throws Error(IoError) or Error(ParseError).
Bundle load_bundle(const std::filesystem::path& path);

struct Model {
  std::shared_ptr<const Configuration> config;
  RuleSet rules;
};

// Builds the configuration and compiles the policies.
Model build_model(const Bundle& bundle);

}  // namespace tacwf::gateway

#endif  // TACWF_GATEWAY_BUNDLE_HPP_
