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

#include "tacwf/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tacwf {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string("'") + what + "' must be a string");
  return j.get<std::string>();
}

std::string text_field(const Json& j, const char* key) { return text(field(j, key), key); }

std::string text_or(const Json& j, const char* key, std::string fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : text(*it, key);
}

Bound bound_or(const Json& j, const char* key, Bound fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : bound_from_json(*it);
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) bad(std::string("'") + what + "' must be a string or an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(text(e, what));
  return out;
}

std::pair<Bound, Bound> range_from(const Json& j, const char* what, std::pair<Bound, Bound> fallback) {
  if (j.is_null()) return fallback;
  if (!j.is_array() || j.size() != 2) bad(std::string("'") + what + "' must be [lower, upper]");
  return {bound_from_json(j[0]), bound_from_json(j[1])};
}

std::pair<Bound, Bound> range_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return range_from(it == j.end() ? Json() : *it, key, {Bound(0), Bound::pos_inf()});
}

Json range_to_json(const Bound& lo, const Bound& hi) { return Json::array({bound_to_json(lo), bound_to_json(hi)}); }

Side side_from(const std::string& s) {
  if (s == "start" || s == "S") return Side::kStart;
  if (s == "end" || s == "E") return Side::kEnd;
  bad("side must be 'start' or 'end', got '" + s + "'");
}

std::string side_text(Side s) { return s == Side::kStart ? "start" : "end"; }

BlockPtr block_from(const Json& j) {
  if (!j.is_object()) bad("structure blocks must be objects");
  if (j.contains("task")) return std::make_shared<Block>(Block{TaskBlock{text_field(j, "task")}});
  if (j.contains("seq")) {
    const Json& items = j["seq"];
    if (!items.is_array() || items.empty()) bad("'seq' must be a non-empty array");
    Json links = j.value("links", Json::array());
    if (!links.is_array() || (!links.empty() && links.size() + 1 != items.size())) {
      bad("'links' must hold one [lower, upper] per consecutive pair");
    }
    BlockPtr acc = block_from(items.back());
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      auto [lo, hi] = links.empty() ? std::pair{Bound(0), Bound::pos_inf()}
                                    : range_from(links[i], "links", {Bound(0), Bound::pos_inf()});
      acc = std::make_shared<Block>(Block{SequenceBlock{block_from(items[i]), lo, hi, acc}});
    }
    return acc;
  }
  if (j.contains("par")) {
    const Json& p = j["par"];
    ParallelBlock pb;
    pb.branch_name = text_or(p, "start", "B");
    pb.join_name = text_or(p, "end", "E");
    std::tie(pb.branch_lower, pb.branch_upper) = range_field(p, "branch");
    std::tie(pb.join_lower, pb.join_upper) = range_field(p, "join");
    const Json& branches = field(p, "branches");
    if (!branches.is_array()) bad("'branches' must be an array");
    for (const auto& b : branches) {
      ParallelBranch br;
      std::tie(br.in_lower, br.in_upper) = range_field(b, "in");
      std::tie(br.out_lower, br.out_upper) = range_field(b, "out");
      br.block = block_from(field(b, "block"));
      pb.branches.push_back(std::move(br));
    }
    return std::make_shared<Block>(Block{std::move(pb)});
  }
  bad("structure block needs one of 'task', 'seq' or 'par'");
}

Json block_to_json(const BlockPtr& b) {
  if (!b) return nullptr;
  if (const auto* t = std::get_if<TaskBlock>(&b->node)) return {{"task", t->task}};
  if (const auto* s = std::get_if<SequenceBlock>(&b->node)) {
    return {{"seq", Json::array({block_to_json(s->first), block_to_json(s->second)})},
            {"links", Json::array({range_to_json(s->lower, s->upper)})}};
  }
  const auto& p = std::get<ParallelBlock>(b->node);
  Json branches = Json::array();
  for (const auto& br : p.branches) {
    branches.push_back({{"in", range_to_json(br.in_lower, br.in_upper)},
                        {"block", block_to_json(br.block)},
                        {"out", range_to_json(br.out_lower, br.out_upper)}});
  }
  return {{"par",
           {{"start", p.branch_name},
            {"end", p.join_name},
            {"branch", range_to_json(p.branch_lower, p.branch_upper)},
            {"join", range_to_json(p.join_lower, p.join_upper)},
            {"branches", branches}}}};
}

std::pair<std::string, std::string> pair_from(const Json& j, const char* a, const char* b, const char* what) {
  if (j.is_array() && j.size() == 2) return {text(j[0], what), text(j[1], what)};
  if (j.is_object()) return {text_field(j, a), text_field(j, b)};
  bad(std::string("'") + what + "' entries must be pairs");
}

PolicyDecl::Kind policy_kind(const std::string& s) {
  if (s == "owner-ends") return PolicyDecl::Kind::kOwnerEnds;
  if (s == "one-task-at-a-time") return PolicyDecl::Kind::kOneTaskAtATime;
  if (s == "tsod") return PolicyDecl::Kind::kTsod;
  bad("unknown policy kind '" + s + "'");
}

std::string_view policy_kind_text(PolicyDecl::Kind k) {
  switch (k) {
    case PolicyDecl::Kind::kOwnerEnds: return "owner-ends";
    case PolicyDecl::Kind::kOneTaskAtATime: return "one-task-at-a-time";
    case PolicyDecl::Kind::kTsod: return "tsod";
  }
  return "?";
}

Status status_from(const std::string& s) {
  for (Status st : {Status::kRunning, Status::kCompleted, Status::kDeadlocked, Status::kViolationRaised}) {
    if (to_string(st) == s) return st;
  }
  bad("unknown status '" + s + "'");
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

Json bound_to_json(const Bound& b) {
  if (b.is_pos_inf()) return "inf";
  if (b.is_neg_inf()) return "-inf";
  if (b.is_integer()) return b.value().numerator();
  return b.to_string();
}

Bound bound_from_json(const Json& j) {
  if (j.is_number_integer()) return Bound(j.get<std::int64_t>());
  if (j.is_number_float()) {
    std::ostringstream os;
    os.precision(15);
    os << std::fixed << j.get<double>();
    std::string s = os.str();
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return guarded([&] { return Bound::parse(s); });
  }
  if (j.is_string()) return guarded([&] { return Bound::parse(j.get<std::string>()); });
  bad("time values must be numbers or strings, got " + j.dump());
}

Workflow workflow_from_json(const Json& j) {
  return guarded([&] {
    Workflow wf;
    for (const auto& t : field(j, "tasks")) {
      Task task;
      task.name = text_field(t, "name");
      task.lower = bound_from_json(field(t, "lower"));
      task.upper = bound_from_json(field(t, "upper"));
      task.roles = strings(field(t, "role"), "role");
      task.start = text_or(t, "start", "A_" + task.name);
      task.end = text_or(t, "end", "C_" + task.name);
      for (const auto& other : wf.tasks) {
        if (other.name == task.name) throw Error(ErrorCode::kDuplicateTaskName, task.name);
      }
      if (!(Bound(0) < task.lower)) throw Error(ErrorCode::kNonPositiveDuration, task.name);
      wf.tasks.push_back(std::move(task));
    }
    wf.root = block_from(field(j, "structure"));
    if (auto it = j.find("relative"); it != j.end()) {
      for (const auto& r : *it) {
        RelativeConstraint rc;
        rc.from = text_field(r, "from");
        rc.from_side = side_from(text_or(r, "fromSide", "end"));
        rc.lower = bound_or(r, "lower", Bound(0));
        rc.upper = bound_or(r, "upper", Bound::pos_inf());
        rc.to = text_field(r, "to");
        rc.to_side = side_from(text_or(r, "toSide", "start"));
        wf.relative.push_back(std::move(rc));
      }
    }
    return wf;
  });
}

Json workflow_to_json(const Workflow& wf) {
  Json tasks = Json::array();
  for (const auto& t : wf.tasks) {
    Json role = t.roles.size() == 1 ? Json(t.roles.front()) : Json(t.roles);
    tasks.push_back({{"name", t.name},
                     {"lower", bound_to_json(t.lower)},
                     {"upper", bound_to_json(t.upper)},
                     {"role", role},
                     {"start", t.start},
                     {"end", t.end}});
  }
  Json relative = Json::array();
  for (const auto& r : wf.relative) {
    relative.push_back({{"from", r.from},
                        {"fromSide", side_text(r.from_side)},
                        {"lower", bound_to_json(r.lower)},
                        {"upper", bound_to_json(r.upper)},
                        {"to", r.to},
                        {"toSide", side_text(r.to_side)}});
  }
  return {{"tasks", tasks}, {"structure", block_to_json(wf.root)}, {"relative", relative}};
}

TrbacModel trbac_from_json(const Json& j) {
  return guarded([&] {
    TrbacModel m;
    for (const auto& u : strings(field(j, "users"), "users")) m.users.insert(u);
    for (const auto& r : strings(field(j, "roles"), "roles")) m.roles.insert(r);
    if (auto it = j.find("perms"); it != j.end()) {
      for (const auto& p : strings(*it, "perms")) m.perms.insert(p);
    }
    for (const auto& e : field(j, "ua")) m.ua.insert(pair_from(e, "user", "role", "ua"));
    for (const auto& e : field(j, "pa")) {
      auto p = pair_from(e, "role", "task", "pa");
      m.pa.insert(p);
      if (!j.contains("perms")) m.perms.insert(p.second);
    }
    for (const auto& e : field(j, "reb")) {
      PeriodicEvent ev;
      ev.name = text_or(e, "name", "");
      const Json& interval = field(e, "interval");
      ev.begin = text_field(interval, "begin");
      ev.end = interval.contains("end") ? text_field(interval, "end") : std::string("inf");
      ev.expression = parse_periodic_expression(text_field(e, "expression"));
      if (e.contains("enable")) {
        ev.role = text_field(e, "enable");
      } else if (e.contains("disable")) {
        ev.role = text_field(e, "disable");
        ev.disable = true;
      } else {
        bad("periodic events need 'enable'");
      }
      if (auto t = e.find("triggers"); t != e.end()) ev.triggers = strings(*t, "triggers");
      if (auto r = e.find("requests"); r != e.end()) ev.requests = strings(*r, "requests");
      if (auto p = e.find("priority"); p != e.end()) ev.priority = p->get<int>();
      m.reb.push_back(std::move(ev));
    }
    return m;
  });
}

Json trbac_to_json(const TrbacModel& m) {
  Json ua = Json::array();
  for (const auto& [u, r] : m.ua) ua.push_back({u, r});
  Json pa = Json::array();
  for (const auto& [r, t] : m.pa) pa.push_back({r, t});
  Json reb = Json::array();
  for (const auto& ev : m.reb) {
    Json e = {{"name", ev.name},
              {"interval", {{"begin", ev.begin}, {"end", ev.end}}},
              {"expression", ev.expression.to_string()},
              {ev.disable ? "disable" : "enable", ev.role}};
    if (!ev.triggers.empty()) e["triggers"] = ev.triggers;
    if (!ev.requests.empty()) e["requests"] = ev.requests;
    if (ev.priority) e["priority"] = *ev.priority;
    reb.push_back(std::move(e));
  }
  return {{"users", m.users}, {"roles", m.roles}, {"perms", m.perms}, {"ua", ua}, {"pa", pa}, {"reb", reb}};
}

TimeWindow window_from_json(const Json& j) {
  return guarded([&] { return TimeWindow::parse(text_field(j, "begin"), text_field(j, "end")); });
}

IntervalAssignments assignments_from_json(const Json& j) {
  return guarded([&] {
    IntervalAssignments out;
    if (j.is_null()) return out;
    if (!j.is_object()) bad("assignments must be an object keyed by task");
    for (const auto& [task, a] : j.items()) {
      IntervalCandidate c;
      c.event = text_or(a, "event", "");
      c.interval.period = field(a, "n").get<std::int64_t>();
      c.interval.z = field(a, "z").get<std::int64_t>();
      out[task] = c;
    }
    return out;
  });
}

std::vector<PolicyDecl> policies_from_json(const Json& j) {
  return guarded([&] {
    const Json& list = j.is_object() ? field(j, "policies") : j;
    if (!list.is_array()) bad("policies must be an array");
    std::vector<PolicyDecl> out;
    for (const auto& p : list) {
      PolicyDecl d;
      d.kind = policy_kind(text_field(p, "kind"));
      switch (d.kind) {
        case PolicyDecl::Kind::kOwnerEnds:
          break;
        case PolicyDecl::Kind::kOneTaskAtATime:
          d.block = text_field(p, "block");
          break;
        case PolicyDecl::Kind::kTsod:
          d.from = text_field(p, "from");
          d.to = text_field(p, "to");
          d.rest = bound_from_json(field(p, "rest"));
          break;
      }
      out.push_back(std::move(d));
    }
    return out;
  });
}

Json policies_to_json(const std::vector<PolicyDecl>& policies) {
  Json out = Json::array();
  for (const auto& p : policies) {
    Json e = {{"kind", policy_kind_text(p.kind)}};
    if (p.kind == PolicyDecl::Kind::kOneTaskAtATime) e["block"] = p.block;
    if (p.kind == PolicyDecl::Kind::kTsod) {
      e["from"] = p.from;
      e["to"] = p.to;
      e["rest"] = bound_to_json(p.rest);
    }
    out.push_back(std::move(e));
  }
  return out;
}

Scenario scenario_from_json(const Json& j) {
  return guarded([&] {
    Scenario s;
    if (auto it = j.find("durations"); it != j.end()) {
      for (const auto& [task, d] : it->items()) s.durations[task] = bound_from_json(d);
    }
    if (auto it = j.find("wfChoices"); it != j.end()) {
      for (const auto& [p, t] : it->items()) s.wf_choices[p] = bound_from_json(t);
    }
    for (const auto& st : field(j, "steps")) {
      s.steps.push_back({text_field(st, "user"), text_field(st, "point"), bound_from_json(field(st, "time"))});
    }
    return s;
  });
}

Json scenario_to_json(const Scenario& s) {
  Json durations = Json::object();
  for (const auto& [t, d] : s.durations) durations[t] = bound_to_json(d);
  Json choices = Json::object();
  for (const auto& [p, t] : s.wf_choices) choices[p] = bound_to_json(t);
  Json steps = Json::array();
  for (const auto& st : s.steps) steps.push_back({{"user", st.user}, {"point", st.point}, {"time", bound_to_json(st.time)}});
  return {{"durations", durations}, {"wfChoices", choices}, {"steps", steps}};
}

Json constraint_to_json(const std::optional<SecurityConstraint>& c) {
  return c ? Json(c->to_string()) : Json(nullptr);
}

Json auth_set_to_json(const AuthSet& set) {
  Json out = Json::array();
  for (const auto& e : set) out.push_back({{"user", e.user}, {"constraint", constraint_to_json(e.constraint)}});
  return out;
}

Json auth_map_to_json(const AuthMap& auth) {
  Json out = Json::object();
  for (const auto& [p, set] : auth) out[p] = auth_set_to_json(set);
  return out;
}

AuthMap auth_map_from_json(const Json& j) {
  return guarded([&] {
    AuthMap out;
    for (const auto& [p, set] : j.items()) {
      AuthSet s;
      for (const auto& e : set) {
        AuthEntry entry{text_field(e, "user"), std::nullopt};
        const Json& c = field(e, "constraint");
        if (!c.is_null()) entry.constraint = SecurityConstraint::parse(text(c, "constraint"));
        s.push_back(std::move(entry));
      }
      out[p] = std::move(s);
    }
    return out;
  });
}

Json rule_to_json(const PropagationRule& r) {
  return {{"name", r.name},
          {"guard", r.guard},
          {"constraint", r.constraint.to_string()},
          {"targets", r.targets},
          {"mode", to_string(r.mode)},
          {"text", r.to_string()}};
}

Json rules_to_json(const RuleSet& rules) {
  Json list = Json::array();
  for (const auto& r : rules.rules) list.push_back(rule_to_json(r));
  Json conflicts = Json::array();
  for (const auto& [a, b] : conflicting_pairs(rules.rules)) conflicts.push_back({rules.rules[a].name, rules.rules[b].name});
  return {{"rules", list}, {"safe", rules.safe}, {"conflicts", conflicts}};
}

Json stn_to_json(const Stn& stn) {
  Json links = Json::array();
  for (const auto& l : stn.links()) {
    Json e = {{"from", l.from}, {"to", l.to}, {"lower", bound_to_json(l.lower)}, {"upper", bound_to_json(l.upper)}};
    if (!l.roles.empty()) e["roles"] = l.roles;
    links.push_back(std::move(e));
  }
  return {{"points", stn.points()}, {"links", links}};
}

Json stnu_to_json(const Stnu& stnu) {
  Json out = stn_to_json(stnu.base());
  Json contingents = Json::array();
  for (const auto& c : stnu.contingents()) {
    contingents.push_back({{"activation", c.activation},
                           {"contingent", c.contingent},
                           {"lower", bound_to_json(c.lower)},
                           {"upper", bound_to_json(c.upper)}});
  }
  out["contingents"] = contingents;
  return out;
}

Json dc_verdict_to_json(const DcVerdict& v) {
  return {{"controllable", v.controllable},
          {"witness", v.witness},
          {"witnessWeight", bound_to_json(v.witness_weight)},
          {"rounds", v.rounds_used}};
}

Json configuration_to_json(const Configuration& config) {
  Json enabling = Json::object();
  for (const auto& [task, e] : config.enabling) {
    enabling[task] = {{"event", e.source.event},
                      {"start", e.start},
                      {"end", e.end},
                      {"roles", e.roles},
                      {"lo", e.source.interval.lo},
                      {"hi", e.source.interval.hi},
                      {"n", e.source.interval.period},
                      {"z", e.source.interval.z}};
  }
  Json tasks = Json::array();
  for (const auto& t : config.tasks) {
    const TaskPoints& tp = config.points_of(t);
    tasks.push_back({{"name", t}, {"activation", tp.activation}, {"contingent", tp.contingent}});
  }
  return {{"network", stnu_to_json(config.stnu)},
          {"tasks", tasks},
          {"enabling", enabling},
          {"accessPoints", config.access_points},
          {"internalPoints", config.mapping.internal_points},
          {"auth", auth_map_to_json(config.auth)}};
}

Json trace_record_to_json(const TraceRecord& r) {
  return {{"user", r.user}, {"point", r.point}, {"time", bound_to_json(r.time)}, {"auth", auth_map_to_json(r.auth)}};
}

Json trace_to_json(const std::vector<TraceRecord>& trace, Status status) {
  Json records = Json::array();
  for (const auto& r : trace) records.push_back(trace_record_to_json(r));
  return {{"records", records}, {"status", to_string(status)}};
}

std::vector<TraceRecord> trace_from_json(const Json& j) {
  return guarded([&] {
    std::vector<TraceRecord> out;
    for (const auto& r : field(j, "records")) {
      TraceRecord rec{text_field(r, "user"), text_field(r, "point"), bound_from_json(field(r, "time")), {}};
      if (auto it = r.find("auth"); it != r.end()) rec.auth = auth_map_from_json(*it);
      out.push_back(std::move(rec));
    }
    if (auto it = j.find("status"); it != j.end()) status_from(text(*it, "status"));
    return out;
  });
}

Json permit_to_json(const StepPermit& p) {
  Json users = Json::array();
  for (const auto& u : p.users) {
    Json e = {{"user", u.user}, {"verdict", to_string(u.verdict)}};
    if (u.constraint) e["constraint"] = u.constraint->to_string();
    users.push_back(std::move(e));
  }
  return {{"point", p.point}, {"range", range_to_json(p.range.lower, p.range.upper)}, {"users", users}};
}

Json state_to_json(const ExecutionState& s) {
  Json permits = Json::array();
  for (const auto& p : s.live_enabled()) permits.push_back(permit_to_json(p));
  Json pending = Json::array();
  for (const auto& [c, pc] : s.pending()) {
    pending.push_back({{"contingent", c},
                       {"activation", pc.activation},
                       {"starter", pc.starter},
                       {"startedAt", bound_to_json(pc.started_at)},
                       {"window", range_to_json(pc.earliest, pc.latest)}});
  }
  return {{"now", bound_to_json(s.now())},
          {"status", to_string(s.status())},
          {"detail", s.status_detail()},
          {"permits", permits},
          {"auth", auth_map_to_json(s.auth())},
          {"pending", pending},
          {"trace", trace_to_json(s.trace(), s.status())["records"]}};
}

Json error_to_json(const Error& e) { return {{"error", to_string(e.code())}, {"detail", e.detail()}}; }

}  // namespace tacwf
