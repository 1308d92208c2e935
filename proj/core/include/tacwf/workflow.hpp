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

#ifndef TACWF_WORKFLOW_HPP_
#define TACWF_WORKFLOW_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tacwf/error.hpp"
#include "tacwf/stnu.hpp"

namespace tacwf {

struct Task {
  std::string name;
  Bound lower;
  Bound upper;
  /// Roles whose conjunction authorizes the task.
  std::vector<std::string> roles;
  PointId start;
  PointId end;
};

struct Block;
using BlockPtr = std::shared_ptr<const Block>;

struct TaskBlock {
  std::string task;
};

struct SequenceBlock {
  BlockPtr first;
  Bound lower;
  Bound upper;
  BlockPtr second;
};

struct ParallelBranch {
  Bound in_lower;
  Bound in_upper;
  BlockPtr block;
  Bound out_lower;
  Bound out_upper;
};

/// Branching point B and joining point E, each an internal task with start and end points.
struct ParallelBlock {
  std::string branch_name = "B";
  std::string join_name = "E";
  Bound branch_lower;
  Bound branch_upper;
  Bound join_lower;
  Bound join_upper;
  std::vector<ParallelBranch> branches;
};

struct Block {
  std::variant<TaskBlock, SequenceBlock, ParallelBlock> node;
};

enum class Side { kStart, kEnd };

/// Requirement link between two tasks (or parallel blocks) outside the control flow.
struct RelativeConstraint {
  std::string from;
  Side from_side = Side::kEnd;
  Bound lower;
  Bound upper;
  std::string to;
  Side to_side = Side::kStart;
};

struct Workflow {
  std::vector<Task> tasks;
  BlockPtr root;
  std::vector<RelativeConstraint> relative;

  const Task* find_task(const std::string& name) const;
};

struct TaskPoints {
  PointId activation;
  PointId contingent;
};

struct ParallelPoints {
  PointId branch_start;
  PointId branch_end;
  PointId join_start;
  PointId join_end;
  /// Tasks nested anywhere inside the branches, in document order.
  std::vector<std::string> tasks;
};

struct WfStnuMapping {
  Stnu stnu;
  std::map<std::string, TaskPoints> task_points;
  std::set<PointId> internal_points;
  /// Keyed by the branching point name.
  std::map<std::string, ParallelPoints> parallel_blocks;
};

/// Throws Error(UnknownTaskInRelativeConstraint) for dangling relative constraints
/// and Error(MalformedNetwork) for a structure the validator would reject.
WfStnuMapping wf_to_stnu(const Workflow& wf);

/// Grammar conformance: every task used exactly once, non-empty parallel blocks,
/// sane ranges, and no degenerate relative constraints.
ValidationReport validate_structured(const Workflow& wf);

/// Number of task leaves in a block tree.
std::size_t count_task_leaves(const BlockPtr& block);

}  // namespace tacwf

#endif  // TACWF_WORKFLOW_HPP_
