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

#include "support.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>

namespace tacwf::testing {
namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string offsets_text(std::mt19937_64& rng, int max_offset, int max_count) {
  std::vector<int> all(max_offset);
  for (int i = 0; i < max_offset; ++i) all[i] = i + 1;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(uniform(rng, 1, max_count));
  std::sort(all.begin(), all.end());
  std::string out = "{";
  for (std::size_t i = 0; i < all.size(); ++i) out += (i ? "," : "") + std::to_string(all[i]);
  return out + "}";
}

std::string date_text(int day_of_year) {
  static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int month = 0;
  while (day_of_year >= kDays[month]) day_of_year -= kDays[month++];
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d/%02d/15", day_of_year + 1, month + 1);
  return buf;
}

struct Times {
  std::map<PointId, std::pair<std::string, Bound>> by_point;

  explicit Times(const std::vector<TraceRecord>& trace) {
    for (const auto& r : trace) by_point[r.point] = {r.user, r.time};
  }
  const std::pair<std::string, Bound>* find(const PointId& p) const {
    auto it = by_point.find(p);
    return it == by_point.end() ? nullptr : &it->second;
  }
};

}  // namespace

std::filesystem::path case_study_dir() { return std::filesystem::path(TACWF_FIXTURE_DIR) / "case_study"; }

CaseStudy load_case_study() {
  CaseStudy cs;
  cs.bundle = gateway::load_bundle(case_study_dir());
  cs.model = gateway::build_model(cs.bundle);
  return cs;
}

Scenario load_scenario(const std::string& file) { return scenario_from_json(read_json_file(case_study_dir() / file)); }

Json reference_run() { return read_json_file(case_study_dir() / "reference_run.json"); }

std::vector<std::string> cell(const AuthSet& set) {
  std::vector<std::string> out;
  for (const auto& e : set) out.push_back(e.to_string());
  return out;
}

std::vector<std::string> cell(const AuthMap& auth, const PointId& p) {
  auto it = auth.find(p);
  return it == auth.end() ? std::vector<std::string>{} : cell(it->second);
}

PeriodicInstance random_periodic_instance(std::mt19937_64& rng) {
  for (;;) {
    std::string text;
    if (uniform(rng, 0, 1) == 0) {
      text = "all.Weeks";
      if (uniform(rng, 0, 2) != 0) text += " + " + offsets_text(rng, 7, 3) + ".Days";
      if (uniform(rng, 0, 1) != 0) text += " + " + offsets_text(rng, 24, 2) + ".Hours";
    } else {
      text = "all.Days + " + offsets_text(rng, 24, 3) + ".Hours";
    }
    text += " > " + std::to_string(uniform(rng, 1, 8)) + ".Hours";

    const int begin_day = uniform(rng, 0, 50);
    const int end_day = begin_day + uniform(rng, 0, 20);
    PeriodicInstance inst{text, parse_periodic_expression(text),
                          TimeWindow::parse(date_text(begin_day), date_text(end_day))};
    if (!spanned_intervals(inst.expr, inst.window).empty()) return inst;
  }
}

Stnu random_small_stnu(std::mt19937_64& rng) {
  const int extra = uniform(rng, 2, 4);
  Stn base("Z");
  std::vector<PointId> pts;
  for (int i = 0; i < extra; ++i) {
    pts.push_back("X" + std::to_string(i));
    base.add_point(pts.back());
  }
  Stnu u(base);
  const int contingents = uniform(rng, 1, extra / 2);
  std::vector<bool> is_contingent(extra, false);
  for (int c = 0; c < contingents; ++c) {
    const int a = (c > 0 && uniform(rng, 0, 1)) ? 2 * c - 1 : 2 * c;
    const int x = uniform(rng, 1, 4);
    u.add_contingent({pts[a], pts[2 * c + 1], Bound(x), Bound(uniform(rng, x + 1, 6))});
    is_contingent[2 * c + 1] = true;
  }
  for (int i = 0; i < extra; ++i) {
    if (is_contingent[i]) continue;
    const Bound lo(uniform(rng, 0, 3));
    const Bound hi = uniform(rng, 0, 3) == 0 ? Bound::pos_inf() : Bound(uniform(rng, 3, 6));
    u.base().add_link({"Z", pts[i], lo, hi, {}});
  }
  const int links = uniform(rng, 2, 6);
  for (int k = 0; k < links; ++k) {
    const int i = uniform(rng, 0, extra - 1);
    const int j = uniform(rng, 0, extra - 1);
    if (i == j) continue;
    const int lo = uniform(rng, -3, 3);
    const Bound hi = uniform(rng, 0, 2) == 0 ? Bound::pos_inf() : Bound(lo + uniform(rng, 0, 4));
    u.base().add_link({pts[i], pts[j], Bound(lo), hi, {}});
  }
  return u;
}

Fragment enabling_fragment(std::int64_t lo, std::int64_t k, std::int64_t x, std::int64_t y) {
  Stn base("Z");
  for (const char* p : {"PS", "PE", "A", "C"}) base.add_point(p);
  base.add_link({"Z", "PS", Bound(lo), Bound(lo), {}});
  base.add_link({"PS", "PE", Bound(k), Bound(k), {}});
  base.add_link({"PS", "A", Bound(0), Bound::pos_inf(), {"R"}});
  base.add_link({"C", "PE", Bound(0), Bound::pos_inf(), {"R"}});
  Stnu u(base);
  u.add_contingent({"A", "C", Bound(x), Bound(y)});
  return {std::move(u), k, x, y};
}

Fragment random_enabling_fragment(std::mt19937_64& rng) {
  const int x = uniform(rng, 1, 8);
  const int y = uniform(rng, x + 1, 12);
  return enabling_fragment(uniform(rng, 0, 30), uniform(rng, 1, 14), x, y);
}

std::string owner_ends_violation(const Configuration& config, const std::vector<TraceRecord>& trace) {
  Times times(trace);
  for (const auto& task : config.tasks) {
    const TaskPoints& tp = config.points_of(task);
    const auto* a = times.find(tp.activation);
    const auto* c = times.find(tp.contingent);
    if (a && c && a->first != c->first) return task + " started by " + a->first + " and ended by " + c->first;
  }
  return {};
}

std::string one_task_at_a_time_violation(const Configuration& config, const std::vector<TraceRecord>& trace,
                                         const std::string& block) {
  Times times(trace);
  const auto& tasks = config.mapping.parallel_blocks.at(block).tasks;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (std::size_t j = i + 1; j < tasks.size(); ++j) {
      const TaskPoints& ti = config.points_of(tasks[i]);
      const TaskPoints& tj = config.points_of(tasks[j]);
      const auto* ai = times.find(ti.activation);
      const auto* ci = times.find(ti.contingent);
      const auto* aj = times.find(tj.activation);
      const auto* cj = times.find(tj.contingent);
      if (!ai || !ci || !aj || !cj || ai->first != aj->first) continue;
      if (max(ai->second, aj->second) <= min(ci->second, cj->second)) {
        return ai->first + " works on " + tasks[i] + " and " + tasks[j] + " at once";
      }
    }
  }
  return {};
}

std::string tsod_violation(const Configuration& config, const std::vector<TraceRecord>& trace,
                           const std::string& from, const std::string& to, const Bound& rest) {
  Times times(trace);
  const auto* c = times.find(config.points_of(from).contingent);
  const auto* a = times.find(config.points_of(to).activation);
  if (!c || !a || c->first != a->first) return {};
  if (a->second - c->second <= rest) {
    return c->first + " starts " + to + " " + (a->second - c->second).to_string() + " after ending " + from;
  }
  return {};
}

}  // namespace tacwf::testing
