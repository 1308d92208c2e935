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

#include <benchmark/benchmark.h>

#include <string>

#include "tacwf/executor.hpp"
#include "tacwf/gateway/bundle.hpp"
#include "tacwf/periodic.hpp"
#include "tacwf/stn.hpp"
#include "tacwf/stnu.hpp"

namespace {

using tacwf::Bound;

// Z -> X1 -> ... -> Xn with [1,3] links and a closing deadline.
tacwf::Stn chain_stn(int n) {
  tacwf::Stn s("Z");
  std::string prev = "Z";
  for (int i = 1; i <= n; ++i) {
    std::string p = "X" + std::to_string(i);
    s.add_point(p);
    s.add_link({prev, p, Bound(1), Bound(3), {}});
    prev = p;
  }
  s.add_link({"Z", prev, Bound(0), Bound(2 * n), {}});
  return s;
}

// n contingent tasks in sequence, each [2,4], separated by [0,2] gaps.
tacwf::Stnu chain_stnu(int n) {
  tacwf::Stnu u{tacwf::Stn("Z")};
  std::string prev = "Z";
  for (int i = 1; i <= n; ++i) {
    std::string a = "A" + std::to_string(i);
    std::string c = "C" + std::to_string(i);
    u.base().add_point(a);
    u.base().add_point(c);
    u.add_contingent({a, c, Bound(2), Bound(4)});
    u.base().add_link({prev, a, Bound(0), Bound(2), {}});
    prev = c;
  }
  u.base().add_link({"Z", prev, Bound(0), Bound(6 * n), {}});
  return u;
}

void BM_AllPairsShortestPaths(benchmark::State& state) {
  auto g = tacwf::to_distance_graph(chain_stn(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(tacwf::all_pairs_shortest_paths(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AllPairsShortestPaths)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_DynamicControllability(benchmark::State& state) {
  auto u = chain_stnu(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tacwf::check_dynamic_controllability(u));
}
BENCHMARK(BM_DynamicControllability)->RangeMultiplier(2)->Range(1, 16);

void BM_PeriodicToStn(benchmark::State& state) {
  auto p = tacwf::parse_periodic_expression("all.Weeks + {1,2,3,4,5}.Days + {10,15}.Hours > 4.Hours");
  std::string end = std::to_string(state.range(0)) + "/01/15";
  if (end.size() < 8) end = "0" + end;
  auto w = tacwf::TimeWindow::parse("01/01/15", end);
  for (auto _ : state) benchmark::DoNotOptimize(tacwf::pt2stn(p, w));
}
BENCHMARK(BM_PeriodicToStn)->Arg(7)->Arg(14)->Arg(28);

void BM_AutoRunCaseStudy(benchmark::State& state) {
  auto model = tacwf::gateway::build_model(tacwf::gateway::load_bundle(TACWF_CASE_STUDY_DIR));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    tacwf::ExecutionState s(model.config, model.rules);
    s.advance_time(0);
    benchmark::DoNotOptimize(tacwf::auto_run(std::move(s), seed++));
  }
}
BENCHMARK(BM_AutoRunCaseStudy);

}  // namespace

BENCHMARK_MAIN();
