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

#ifndef TACWF_ERROR_HPP_
#define TACWF_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tacwf {

// Names are part of the wire format: the service reports them verbatim.
enum class ErrorCode {
  // temporal networks
  kMalformedNetwork,
  kUnknownPoint,
  kInconsistentNetwork,
  kValueOutOfRange,
  kIncompleteSituation,
  kDurationOutOfBounds,
  kInstanceTooLarge,
  // documents
  kParseError,
  kDuplicateTaskName,
  kNonPositiveDuration,
  kUnknownTaskInRelativeConstraint,
  kNonDescendingCalendars,
  kFirstTermNotAll,
  kEmptyWindow,
  kUnboundedWindow,
  // configuration
  kNoEnablingInterval,
  kAmbiguousInterval,
  kEmptyAuthorizedSet,
  // security rules
  kNotType2,
  kUnknownTask,
  kNotAParallelBlock,
  // execution
  kUnsafeRuleSet,
  kNotRunning,
  kNotEnabled,
  kUserNotAuthorized,
  kUserBlocked,
  kTimeOutOfRange,
  kWrongOwner,
  kNotPending,
  kOutsideContingentWindow,
  kDeadlineMissed,
  kMissingWfChoice,
  kScenarioMismatch,
  // I/O
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure the library reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Outcome of a report-style validation: an empty issue list means valid.
struct ValidationReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  void add(std::string issue) { issues.push_back(std::move(issue)); }
};

}  // namespace tacwf

#endif  // TACWF_ERROR_HPP_
