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

#include "tacwf/security.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "tacwf/configuration.hpp"
#include "tacwf/error.hpp"

namespace tacwf {
namespace {

struct OpSpelling {
  Op op;
  std::string_view text;
};

// Longest spellings first so that "<=" wins over "<".
constexpr std::array<OpSpelling, 9> kSpellings{{
    {Op::kGe, ">="},
    {Op::kLe, "<="},
    {Op::kNe, "!="},
    {Op::kGe, "\xE2\x89\xA5"},
    {Op::kLe, "\xE2\x89\xA4"},
    {Op::kNe, "\xE2\x89\xA0"},
    {Op::kGt, ">"},
    {Op::kLt, "<"},
    {Op::kEq, "="},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

bool compare(const Bound& t, Op op, const Bound& k) {
  switch (op) {
    case Op::kGt: return t > k;
    case Op::kLt: return t < k;
    case Op::kGe: return t >= k;
    case Op::kLe: return t <= k;
    case Op::kEq: return t == k;
    case Op::kNe: return t != k;
  }
  return false;
}

bool type2_value(Op op) { return op == Op::kLt || op == Op::kLe || op == Op::kNe; }

const TaskPoints& task_or_throw(const Configuration& config, const std::string& task) {
  auto it = config.mapping.task_points.find(task);
  if (it == config.mapping.task_points.end()) throw Error(ErrorCode::kUnknownTask, task);
  return it->second;
}

}  // namespace

std::string_view to_string(Op op) {
  switch (op) {
    case Op::kGt: return ">";
    case Op::kLt: return "<";
    case Op::kGe: return ">=";
    case Op::kLe: return "<=";
    case Op::kEq: return "=";
    case Op::kNe: return "!=";
  }
  return "?";
}

Op parse_op(std::string_view text) {
  text = trim(text);
  for (const auto& s : kSpellings) {
    if (text == s.text) return s.op;
  }
  throw Error(ErrorCode::kParseError, "unknown operator '" + std::string(text) + "'");
}

Op complement(Op op) {
  switch (op) {
    case Op::kGt: return Op::kLe;
    case Op::kLt: return Op::kGe;
    case Op::kGe: return Op::kLt;
    case Op::kLe: return Op::kGt;
    case Op::kEq: return Op::kNe;
    case Op::kNe: return Op::kEq;
  }
  return op;
}

SecurityConstraint SecurityConstraint::type1(Bound t_k, Op op) {
  if (!t_k.is_finite() || t_k < Bound(0)) {
    throw Error(ErrorCode::kValueOutOfRange, "t_k must be finite and non-negative");
  }
  return {std::nullopt, t_k, op};
}

SecurityConstraint SecurityConstraint::type2(PointId x, Bound k, Op op) {
  if (!k.is_finite() || k < Bound(0)) throw Error(ErrorCode::kValueOutOfRange, "k must be finite and non-negative");
  if (x.empty()) throw Error(ErrorCode::kUnknownPoint, "empty point name");
  return {std::move(x), k, op};
}

std::string SecurityConstraint::to_string() const {
  std::string lhs;
  if (point) {
    lhs = *point;
    if (k != Bound(0)) lhs += "+" + k.to_string();
  } else {
    lhs = k.to_string();
  }
  return lhs + "," + std::string(tacwf::to_string(op));
}

SecurityConstraint SecurityConstraint::parse(std::string_view text) {
  auto comma = text.rfind(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorCode::kParseError, "constraint '" + std::string(text) + "' lacks ','");
  }
  Op op = parse_op(text.substr(comma + 1));
  std::string_view lhs = trim(text.substr(0, comma));
  if (lhs.empty()) throw Error(ErrorCode::kParseError, "constraint '" + std::string(text) + "' lacks a value");
  const unsigned char first = static_cast<unsigned char>(lhs.front());
  if (std::isdigit(first) || first == '-') return type1(Bound::parse(lhs), op);
  auto plus = lhs.find('+');
  if (plus == std::string_view::npos) return type2(std::string(lhs), Bound(0), op);
  return type2(std::string(trim(lhs.substr(0, plus))), Bound::parse(trim(lhs.substr(plus + 1))), op);
}

bool satisfies(const Bound& t, const SecurityConstraint& c) {
  if (c.is_type2()) return type2_value(c.op);
  return compare(t, c.op, c.k);
}

SecurityConstraint reduce_type2(const SecurityConstraint& c, const Bound& value_of_x) {
  if (!c.is_type2()) throw Error(ErrorCode::kNotType2, c.to_string());
  return SecurityConstraint::type1(value_of_x + c.k, c.op);
}

std::string AuthEntry::to_string() const {
  return user + "<" + (constraint ? constraint->to_string() : std::string()) + ">";
}

bool is_blocked(const AuthEntry& entry, const Bound& t) {
  return entry.constraint.has_value() && satisfies(t, *entry.constraint);
}

const AuthEntry* find_entry(const AuthSet& set, const std::string& user) {
  for (const auto& e : set) {
    if (e.user == user) return &e;
  }
  return nullptr;
}

std::string_view to_string(Mode m) { return m == Mode::kSame ? "=" : "!="; }

std::string PropagationRule::to_string() const {
  std::string out = "<" + guard + ",<" + constraint.to_string() + ">,{";
  bool first = true;
  for (const auto& t : targets) {
    if (!first) out += ",";
    out += t;
    first = false;
  }
  return out + "}," + std::string(tacwf::to_string(mode)) + ">";
}

bool conflicting(const PropagationRule& r1, const PropagationRule& r2) {
  if (r1.guard != r2.guard || r1.constraint == r2.constraint || r1.mode != r2.mode) return false;
  return std::any_of(r1.targets.begin(), r1.targets.end(), [&](const PointId& y) { return r2.targets.count(y) != 0; });
}

std::vector<std::pair<std::size_t, std::size_t>> conflicting_pairs(const std::vector<PropagationRule>& rules) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      if (conflicting(rules[i], rules[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

bool safeness_check(const std::vector<PropagationRule>& rules) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      if (conflicting(rules[i], rules[j])) return false;
    }
  }
  return true;
}

RuleSet RuleSet::make(std::vector<PropagationRule> rules) {
  RuleSet s;
  s.safe = safeness_check(rules);
  s.rules = std::move(rules);
  return s;
}

std::vector<PropagationRule> compile_policy(const PolicyDecl& p, const Configuration& config) {
  std::vector<PropagationRule> out;
  switch (p.kind) {
    case PolicyDecl::Kind::kOwnerEnds:
      for (const auto& task : config.tasks) {
        const TaskPoints& tp = task_or_throw(config, task);
        out.push_back({"", tp.activation, SecurityConstraint::type2(tp.contingent, Bound(0), Op::kLe),
                       {tp.contingent}, Mode::kDifferent});
      }
      break;
    case PolicyDecl::Kind::kOneTaskAtATime: {
      auto it = config.mapping.parallel_blocks.find(p.block);
      if (it == config.mapping.parallel_blocks.end()) throw Error(ErrorCode::kNotAParallelBlock, p.block);
      const auto& tasks = it->second.tasks;
      for (const auto& ti : tasks) {
        for (const auto& tj : tasks) {
          if (ti == tj) continue;
          const TaskPoints& a = task_or_throw(config, ti);
          const TaskPoints& b = task_or_throw(config, tj);
          out.push_back({"", a.activation, SecurityConstraint::type2(a.contingent, Bound(0), Op::kLe),
                         {b.activation}, Mode::kSame});
        }
      }
      break;
    }
    case PolicyDecl::Kind::kTsod: {
      const TaskPoints& from = task_or_throw(config, p.from);
      const TaskPoints& to = task_or_throw(config, p.to);
      out.push_back({"", from.contingent, SecurityConstraint::type2(from.contingent, p.rest, Op::kLe),
                     {to.activation}, Mode::kSame});
      break;
    }
  }
  return out;
}

RuleSet compile_policies(const std::vector<PolicyDecl>& policies, const Configuration& config) {
  std::vector<PropagationRule> rules;
  for (const auto& p : policies) {
    for (auto& r : compile_policy(p, config)) rules.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < rules.size(); ++i) rules[i].name = "r" + std::to_string(i + 1);
  return RuleSet::make(std::move(rules));
}

}  // namespace tacwf
