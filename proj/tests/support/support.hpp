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

// Shared fixtures, generators and trace predicates for the test binaries.

#ifndef TACWF_TESTS_SUPPORT_HPP_
#define TACWF_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tacwf/gateway/bundle.hpp"
#include "tacwf/json_io.hpp"

namespace tacwf::testing {

std::filesystem::path case_study_dir();

struct CaseStudy {
  gateway::Bundle bundle;
  gateway::Model model;
};

CaseStudy load_case_study();
Scenario load_scenario(const std::string& file);

// Rows of reference_run.json: {user, point, time, auth: {point: ["u1<>", ...]}}.
Json reference_run();

// Cells of an auth map in the "u1<12,<=>" notation.
std::vector<std::string> cell(const AuthSet& set);
std::vector<std::string> cell(const AuthMap& auth, const PointId& p);

// Random periodic expression together with a window containing at least one interval.
struct PeriodicInstance {
  std::string text;
  PeriodicExpression expr;
  TimeWindow window;
};
PeriodicInstance random_periodic_instance(std::mt19937_64& rng);

// Small STNU: 2..4 points beyond Z, integer bounds within [-3, 6].
Stnu random_small_stnu(std::mt19937_64& rng);

// Z -[lo,lo]-> PS -[k,k]-> PE, PS -[0,inf]-> A => [x,y] C -[0,inf]-> PE.
struct Fragment {
  Stnu stnu;
  std::int64_t k = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
};
Fragment enabling_fragment(std::int64_t lo, std::int64_t k, std::int64_t x, std::int64_t y);
Fragment random_enabling_fragment(std::mt19937_64& rng);

// Policy predicates over a completed trace. Each returns the first offending
// description, or an empty string.
std::string owner_ends_violation(const Configuration& config, const std::vector<TraceRecord>& trace);
std::string one_task_at_a_time_violation(const Configuration& config, const std::vector<TraceRecord>& trace,
                                         const std::string& block);
std::string tsod_violation(const Configuration& config, const std::vector<TraceRecord>& trace,
                           const std::string& from, const std::string& to, const Bound& rest);

}  // namespace tacwf::testing

#endif  // TACWF_TESTS_SUPPORT_HPP_
