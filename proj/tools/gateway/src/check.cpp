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

#include "tacwf/gateway/check.hpp"

namespace tacwf::gateway {

CheckReport run_checks(const Bundle& bundle) {
  CheckReport out;
  Json& r = out.report;
  bool ok = true;

  ValidationReport wf = validate_structured(bundle.workflow);
  ValidationReport tr = validate_trbac(bundle.trbac);
  r["workflow"] = wf.issues;
  r["trbac"] = tr.issues;
  ok = wf.ok() && tr.ok();

  std::optional<Configuration> config;
  try {
    config = build_configuration(bundle.workflow, bundle.trbac, bundle.window, bundle.assignments);
    r["configuration"] = nullptr;
  } catch (const Error& e) {
    r["configuration"] = error_to_json(e);
    ok = false;
  }

  if (config) {
    Json widths = Json::array();
    for (const auto& v : precheck_enabling_width(*config)) {
      widths.push_back({{"task", v.task}, {"width", bound_to_json(v.width)}, {"upper", bound_to_json(v.upper)}});
    }
    ok = ok && widths.empty();
    r["widths"] = widths;

    DcVerdict dc = check_dynamic_controllability(config->stnu);
    r["dc"] = dc_verdict_to_json(dc);
    ok = ok && dc.controllable;
    r["auth"] = auth_map_to_json(config->auth);

    try {
      RuleSet rules = compile_policies(bundle.policies, *config);
      r["rules"] = rules_to_json(rules);
      r["safe"] = rules.safe;
      ok = ok && rules.safe;
    } catch (const Error& e) {
      r["rules"] = error_to_json(e);
      r["safe"] = false;
      ok = false;
    }
  }
  r["ok"] = ok;
  out.ok = ok;
  return out;
}

}  // namespace tacwf::gateway
