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

// JSON documents and wire shapes. Readers throw Error(ParseError) on shape
// problems; file helpers throw Error(IoError). Object keys serialize sorted,
// so equal values always produce identical text.

#ifndef TACWF_JSON_IO_HPP_
#define TACWF_JSON_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tacwf/configuration.hpp"
#include "tacwf/executor.hpp"
#include "tacwf/security.hpp"
#include "tacwf/stnu.hpp"
#include "tacwf/trbac.hpp"
#include "tacwf/workflow.hpp"

namespace tacwf {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

// Integers as numbers, other rationals as "p/q", infinities as "inf"/"-inf".
Json bound_to_json(const Bound& b);
Bound bound_from_json(const Json& j);

Workflow workflow_from_json(const Json& j);
Json workflow_to_json(const Workflow& wf);

TrbacModel trbac_from_json(const Json& j);
Json trbac_to_json(const TrbacModel& m);

/// {"begin": "dd/mm/yy[:hh]", "end": "dd/mm/yy[:hh]"}
TimeWindow window_from_json(const Json& j);

/// {"T1": {"event": "P1", "n": 1, "z": 9}, ...}
IntervalAssignments assignments_from_json(const Json& j);

std::vector<PolicyDecl> policies_from_json(const Json& j);
Json policies_to_json(const std::vector<PolicyDecl>& policies);

Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& s);

Json constraint_to_json(const std::optional<SecurityConstraint>& c);
Json auth_set_to_json(const AuthSet& set);
Json auth_map_to_json(const AuthMap& auth);
AuthMap auth_map_from_json(const Json& j);

Json rule_to_json(const PropagationRule& r);
Json rules_to_json(const RuleSet& rules);

Json stn_to_json(const Stn& stn);
Json stnu_to_json(const Stnu& stnu);
Json dc_verdict_to_json(const DcVerdict& v);
Json configuration_to_json(const Configuration& config);

Json trace_record_to_json(const TraceRecord& r);
/// {"records": [{user, point, time, auth}], "status": "..."}
Json trace_to_json(const std::vector<TraceRecord>& trace, Status status);
std::vector<TraceRecord> trace_from_json(const Json& j);

Json permit_to_json(const StepPermit& p);
/// now, status, detail, permits, auth, pending and trace.
Json state_to_json(const ExecutionState& s);

Json error_to_json(const Error& e);

}  // namespace tacwf

#endif  // TACWF_JSON_IO_HPP_
