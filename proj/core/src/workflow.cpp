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

#include "tacwf/workflow.hpp"

#include <utility>

namespace tacwf {
namespace {

std::string range_text(const Bound& lo, const Bound& hi) {
  return "[" + lo.to_string() + "," + hi.to_string() + "]";
}

bool sane_range(const Bound& lo, const Bound& hi) {
  return lo.is_finite() && !(lo < Bound(0)) && !(hi < lo);
}

class Validator {
 public:
  explicit Validator(const Workflow& wf) : wf_(wf) {}

  ValidationReport run() {
    if (!wf_.root) {
      report_.add("workflow has no structure");
    } else {
      visit(*wf_.root);
    }
    std::set<PointId> names{"Z"};
    for (const auto& t : wf_.tasks) {
      if (!(Bound(0) < t.lower && t.lower < t.upper && t.upper.is_finite())) {
        report_.add("task " + t.name + " duration " + range_text(t.lower, t.upper) +
                    " must satisfy 0 < x < y < inf");
      }
      if (t.roles.empty()) report_.add("task " + t.name + " has no authorized role");
      auto it = uses_.find(t.name);
      std::size_t n = it == uses_.end() ? 0 : it->second;
      if (n != 1) report_.add("task " + t.name + " appears " + std::to_string(n) + " times in the structure");
      claim(names, t.start, "task " + t.name);
      claim(names, t.end, "task " + t.name);
    }
    for (const auto& b : blocks_) {
      claim(names, b->branch_name + "S", "parallel block " + b->branch_name);
      claim(names, b->branch_name + "E", "parallel block " + b->branch_name);
      claim(names, b->join_name + "S", "parallel block " + b->branch_name);
      claim(names, b->join_name + "E", "parallel block " + b->branch_name);
    }
    for (const auto& rc : wf_.relative) {
      if (!known(rc.from) || !known(rc.to)) {
        report_.add("relative constraint " + rc.from + " -> " + rc.to + " references an unknown task");
      }
      if (rc.from == rc.to && rc.from_side == rc.to_side) {
        report_.add("relative constraint on " + rc.from + " is a self loop");
      }
      if (rc.upper < rc.lower) {
        report_.add("relative constraint " + rc.from + " -> " + rc.to + " has empty range " +
                    range_text(rc.lower, rc.upper));
      }
    }
    return std::move(report_);
  }

 private:
  void claim(std::set<PointId>& names, const PointId& p, const std::string& owner) {
    if (p.empty()) {
      report_.add(owner + " has an empty point name");
    } else if (!names.insert(p).second) {
      report_.add(owner + " reuses point name " + p);
    }
  }

  bool known(const std::string& name) const {
    if (wf_.find_task(name)) return true;
    for (const auto* b : blocks_) {
      if (b->branch_name == name) return true;
    }
    return false;
  }

  void visit(const Block& b) {
    if (const auto* t = std::get_if<TaskBlock>(&b.node)) {
      if (!wf_.find_task(t->task)) report_.add("structure references unknown task " + t->task);
      ++uses_[t->task];
    } else if (const auto* s = std::get_if<SequenceBlock>(&b.node)) {
      if (!s->first || !s->second) {
        report_.add("sequence with a missing side");
        return;
      }
      if (!sane_range(s->lower, s->upper)) {
        report_.add("sequence link has invalid range " + range_text(s->lower, s->upper));
      }
      visit(*s->first);
      visit(*s->second);
    } else if (const auto* p = std::get_if<ParallelBlock>(&b.node)) {
      blocks_.push_back(p);
      if (p->branches.empty()) report_.add("parallel block " + p->branch_name + " has no branches");
      if (!sane_range(p->branch_lower, p->branch_upper) || !sane_range(p->join_lower, p->join_upper)) {
        report_.add("parallel block " + p->branch_name + " has an invalid branch or join range");
      }
      for (const auto& br : p->branches) {
        if (!br.block) {
          report_.add("parallel block " + p->branch_name + " has an empty branch");
          continue;
        }
        if (!sane_range(br.in_lower, br.in_upper) || !sane_range(br.out_lower, br.out_upper)) {
          report_.add("parallel block " + p->branch_name + " has an invalid branch link");
        }
        visit(*br.block);
      }
    }
  }

  const Workflow& wf_;
  ValidationReport report_;
  std::map<std::string, std::size_t> uses_;
  std::vector<const ParallelBlock*> blocks_;
};

struct Endpoints {
  PointId start;
  PointId end;
};

class Mapper {
 public:
  explicit Mapper(const Workflow& wf) : wf_(wf), out_{Stnu(Stn("Z")), {}, {}, {}} {}

  WfStnuMapping run() {
    out_.internal_points.insert("Z");
    for (const auto& t : wf_.tasks) {
      out_.stnu.base().add_point(t.start);
      out_.stnu.base().add_point(t.end);
      out_.stnu.add_contingent({t.start, t.end, t.lower, t.upper});
      out_.task_points[t.name] = {t.start, t.end};
    }
    map(*wf_.root, nullptr);
    for (const auto& rc : wf_.relative) {
      out_.stnu.base().add_link({resolve(rc.from, rc.from_side), resolve(rc.to, rc.to_side), rc.lower, rc.upper, {}});
    }
    return std::move(out_);
  }

 private:
  PointId resolve(const std::string& name, Side side) const {
    if (auto it = out_.task_points.find(name); it != out_.task_points.end()) {
      return side == Side::kStart ? it->second.activation : it->second.contingent;
    }
    auto it = out_.parallel_blocks.find(name);
    return side == Side::kStart ? it->second.branch_start : it->second.join_end;
  }

  void link(const PointId& from, const PointId& to, const Bound& lo, const Bound& hi) {
    out_.stnu.base().add_link({from, to, lo, hi, {}});
  }

  PointId internal(const std::string& name) {
    out_.stnu.base().add_point(name);
    out_.internal_points.insert(name);
    return name;
  }

  Endpoints map(const Block& b, std::vector<std::string>* collect) {
    if (const auto* t = std::get_if<TaskBlock>(&b.node)) {
      if (collect) collect->push_back(t->task);
      const TaskPoints& tp = out_.task_points.at(t->task);
      return {tp.activation, tp.contingent};
    }
    if (const auto* s = std::get_if<SequenceBlock>(&b.node)) {
      Endpoints first = map(*s->first, collect);
      Endpoints second = map(*s->second, collect);
      link(first.end, second.start, s->lower, s->upper);
      return {first.start, second.end};
    }
    const auto& p = std::get<ParallelBlock>(b.node);
    ParallelPoints pp{internal(p.branch_name + "S"), internal(p.branch_name + "E"),
                      internal(p.join_name + "S"), internal(p.join_name + "E"), {}};
    link(pp.branch_start, pp.branch_end, p.branch_lower, p.branch_upper);
    for (const auto& br : p.branches) {
      Endpoints inner = map(*br.block, &pp.tasks);
      link(pp.branch_end, inner.start, br.in_lower, br.in_upper);
      link(inner.end, pp.join_start, br.out_lower, br.out_upper);
    }
    link(pp.join_start, pp.join_end, p.join_lower, p.join_upper);
    if (collect) collect->insert(collect->end(), pp.tasks.begin(), pp.tasks.end());
    out_.parallel_blocks.emplace(p.branch_name, pp);
    return {pp.branch_start, pp.join_end};
  }

  const Workflow& wf_;
  WfStnuMapping out_;
};

void collect_parallel_names(const BlockPtr& b, std::set<std::string>& out) {
  if (!b) return;
  if (const auto* s = std::get_if<SequenceBlock>(&b->node)) {
    collect_parallel_names(s->first, out);
    collect_parallel_names(s->second, out);
  } else if (const auto* p = std::get_if<ParallelBlock>(&b->node)) {
    out.insert(p->branch_name);
    for (const auto& br : p->branches) collect_parallel_names(br.block, out);
  }
}

}  // namespace

const Task* Workflow::find_task(const std::string& name) const {
  for (const auto& t : tasks) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

ValidationReport validate_structured(const Workflow& wf) { return Validator(wf).run(); }

WfStnuMapping wf_to_stnu(const Workflow& wf) {
  std::set<std::string> blocks;
  collect_parallel_names(wf.root, blocks);
  for (const auto& rc : wf.relative) {
    for (const auto* name : {&rc.from, &rc.to}) {
      if (!wf.find_task(*name) && !blocks.count(*name)) {
        throw Error(ErrorCode::kUnknownTaskInRelativeConstraint, *name);
      }
    }
  }
  ValidationReport report = validate_structured(wf);
  if (!report.ok()) throw Error(ErrorCode::kMalformedNetwork, report.issues.front());
  return Mapper(wf).run();
}

std::size_t count_task_leaves(const BlockPtr& block) {
  if (!block) return 0;
  if (std::holds_alternative<TaskBlock>(block->node)) return 1;
  if (const auto* s = std::get_if<SequenceBlock>(&block->node)) {
    return count_task_leaves(s->first) + count_task_leaves(s->second);
  }
  std::size_t n = 0;
  for (const auto& br : std::get<ParallelBlock>(block->node).branches) n += count_task_leaves(br.block);
  return n;
}

}  // namespace tacwf
