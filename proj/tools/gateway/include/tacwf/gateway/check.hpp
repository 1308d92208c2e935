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

#ifndef TACWF_GATEWAY_CHECK_HPP_
#define TACWF_GATEWAY_CHECK_HPP_

#include "tacwf/gateway/bundle.hpp"

namespace tacwf::gateway {

struct CheckReport {
  // workflow, trbac, configuration, widths, dc, auth, rules, safe, ok
  Json report;
  bool ok = false;
};

CheckReport run_checks(const Bundle& bundle);

}  // namespace tacwf::gateway

#endif  // TACWF_GATEWAY_CHECK_HPP_
