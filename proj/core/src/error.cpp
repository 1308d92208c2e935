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

#include "tacwf/error.hpp"

namespace tacwf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedNetwork: return "MalformedNetwork";
    case ErrorCode::kUnknownPoint: return "UnknownPoint";
    case ErrorCode::kInconsistentNetwork: return "InconsistentNetwork";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kIncompleteSituation: return "IncompleteSituation";
    case ErrorCode::kDurationOutOfBounds: return "DurationOutOfBounds";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateTaskName: return "DuplicateTaskName";
    case ErrorCode::kNonPositiveDuration: return "NonPositiveDuration";
    case ErrorCode::kUnknownTaskInRelativeConstraint: return "UnknownTaskInRelativeConstraint";
    case ErrorCode::kNonDescendingCalendars: return "NonDescendingCalendars";
    case ErrorCode::kFirstTermNotAll: return "FirstTermNotAll";
    case ErrorCode::kEmptyWindow: return "EmptyWindow";
    case ErrorCode::kUnboundedWindow: return "UnboundedWindow";
    case ErrorCode::kNoEnablingInterval: return "NoEnablingInterval";
    case ErrorCode::kAmbiguousInterval: return "AmbiguousInterval";
    case ErrorCode::kEmptyAuthorizedSet: return "EmptyAuthorizedSet";
    case ErrorCode::kNotType2: return "NotType2";
    case ErrorCode::kUnknownTask: return "UnknownTask";
    case ErrorCode::kNotAParallelBlock: return "NotAParallelBlock";
    case ErrorCode::kUnsafeRuleSet: return "UnsafeRuleSet";
    case ErrorCode::kNotRunning: return "NotRunning";
    case ErrorCode::kNotEnabled: return "NotEnabled";
    case ErrorCode::kUserNotAuthorized: return "UserNotAuthorized";
    case ErrorCode::kUserBlocked: return "UserBlocked";
    case ErrorCode::kTimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::kWrongOwner: return "WrongOwner";
    case ErrorCode::kNotPending: return "NotPending";
    case ErrorCode::kOutsideContingentWindow: return "OutsideContingentWindow";
    case ErrorCode::kDeadlineMissed: return "DeadlineMissed";
    case ErrorCode::kMissingWfChoice: return "MissingWfChoice";
    case ErrorCode::kScenarioMismatch: return "ScenarioMismatch";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace tacwf
