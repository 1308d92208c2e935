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

#ifndef TACWF_SECURITY_HPP_
#define TACWF_SECURITY_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tacwf/stn.hpp"

namespace tacwf {

struct Configuration;

/// The distinguished system user owning every non-task point.
inline constexpr std::string_view kWorkflowUser = "wf";

enum class Op { kGt, kLt, kGe, kLe, kEq, kNe };

std::string_view to_string(Op op);
/// Accepts ">", "<", ">=", "<=", "=", "!=" and the Unicode forms of the last three.
Op parse_op(std::string_view text);
Op complement(Op op);

/// Type-1 "t_k,op" when `point` is empty, Type-2 "X+k,op" otherwise.
struct SecurityConstraint {
  std::optional<PointId> point;
  Bound k{0};
  Op op = Op::kLe;

  static SecurityConstraint type1(Bound t_k, Op op);
  static SecurityConstraint type2(PointId x, Bound k, Op op);

  bool is_type2() const { return point.has_value(); }

  /// "14,<=", "C1+2,<=", "C1,<=".
  std::string to_string() const;
  /// Inverse of to_string; throws Error(ParseError).
  static SecurityConstraint parse(std::string_view text);

  friend bool operator==(const SecurityConstraint&, const SecurityConstraint&) = default;
};

/// Whether current time `t` satisfies `c`. An unreduced Type-2 constraint has a
/// fixed truth value: false for >, >= and =, true for <, <= and !=.
bool satisfies(const Bound& t, const SecurityConstraint& c);

/// Substitutes the executed time of X. Throws Error(NotType2).
SecurityConstraint reduce_type2(const SecurityConstraint& c, const Bound& value_of_x);

struct AuthEntry {
  std::string user;
  std::optional<SecurityConstraint> constraint;

  /// "u1<>" or "u1<14,<=>".
  std::string to_string() const;
  friend bool operator==(const AuthEntry&, const AuthEntry&) = default;
};

/// Entries sorted by user, one per user.
using AuthSet = std::vector<AuthEntry>;
using AuthMap = std::map<PointId, AuthSet>;

bool is_blocked(const AuthEntry& entry, const Bound& t);
const AuthEntry* find_entry(const AuthSet& set, const std::string& user);

enum class Mode { kSame, kDifferent };

std::string_view to_string(Mode m);

/// <guard, <constraint>, targets, mode>
struct PropagationRule {
  std::string name;
  PointId guard;
  SecurityConstraint constraint;
  std::set<PointId> targets;
  Mode mode = Mode::kDifferent;

  std::string to_string() const;

  /// Names are labels only and do not take part in comparison.
  friend bool operator==(const PropagationRule& a, const PropagationRule& b) {
    return a.guard == b.guard && a.constraint == b.constraint && a.targets == b.targets && a.mode == b.mode;
  }
};

/// Same guard, different constraints, overlapping targets and the same mode.
bool conflicting(const PropagationRule& r1, const PropagationRule& r2);

/// Unordered index pairs of conflicting rules.
std::vector<std::pair<std::size_t, std::size_t>> conflicting_pairs(const std::vector<PropagationRule>& rules);

bool safeness_check(const std::vector<PropagationRule>& rules);

struct RuleSet {
  std::vector<PropagationRule> rules;
  bool safe = true;

  static RuleSet make(std::vector<PropagationRule> rules);
};

struct PolicyDecl {
  enum class Kind { kOwnerEnds, kOneTaskAtATime, kTsod };

  Kind kind = Kind::kOwnerEnds;
  std::string block;  // kOneTaskAtATime
  std::string from;   // kTsod
  std::string to;     // kTsod
  Bound rest{0};      // kTsod
};

/// Throws Error(UnknownTask) or Error(NotAParallelBlock).
std::vector<PropagationRule> compile_policy(const PolicyDecl& p, const Configuration& config);

/// Concatenates the compiled rules, names them r1, r2, ... and runs the safeness check.
RuleSet compile_policies(const std::vector<PolicyDecl>& policies, const Configuration& config);

}  // namespace tacwf

#endif  // TACWF_SECURITY_HPP_
