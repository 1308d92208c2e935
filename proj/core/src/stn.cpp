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

#include "tacwf/stn.hpp"

#include <algorithm>

#include "tacwf/error.hpp"

namespace tacwf {

Stn::Stn(PointId origin) {
  points_.push_back(origin);
  index_.emplace(std::move(origin), 0);
}

void Stn::add_point(const PointId& p) {
  if (has_point(p)) return;
  index_.emplace(p, points_.size());
  points_.push_back(p);
}

std::size_t Stn::index_of(const PointId& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw Error(ErrorCode::kUnknownPoint, p);
  return it->second;
}

void Stn::check_link(const RequirementLink& link) const {
  if (!has_point(link.from) || !has_point(link.to)) {
    throw Error(ErrorCode::kMalformedNetwork,
                "link " + link.from + " -> " + link.to + " references an unknown point");
  }
  if (link.from == link.to) {
    throw Error(ErrorCode::kMalformedNetwork, "self loop on " + link.from);
  }
  if (link.upper < link.lower || link.lower.is_pos_inf() || link.upper.is_neg_inf()) {
    throw Error(ErrorCode::kMalformedNetwork, "link " + link.from + " -> " + link.to + " has range [" +
                                                  link.lower.to_string() + "," +
                                                  link.upper.to_string() + "]");
  }
}

void Stn::add_link(RequirementLink link) {
  check_link(link);
  auto key = std::make_pair(index_of(link.from), index_of(link.to));
  auto it = link_index_.find(key);
  if (it == link_index_.end()) {
    link_index_.emplace(key, links_.size());
    links_.push_back(std::move(link));
    return;
  }
  RequirementLink& cur = links_[it->second];
  cur.lower = max(cur.lower, link.lower);
  cur.upper = min(cur.upper, link.upper);
  for (auto& r : link.roles) {
    if (std::find(cur.roles.begin(), cur.roles.end(), r) == cur.roles.end()) cur.roles.push_back(r);
  }
}

void Stn::set_link(RequirementLink link) {
  check_link(link);
  auto key = std::make_pair(index_of(link.from), index_of(link.to));
  auto it = link_index_.find(key);
  if (it == link_index_.end()) {
    link_index_.emplace(key, links_.size());
    links_.push_back(std::move(link));
  } else {
    links_[it->second] = std::move(link);
  }
}

bool Stn::remove_link(const PointId& from, const PointId& to) {
  auto it = link_index_.find({index_of(from), index_of(to)});
  if (it == link_index_.end()) return false;
  std::size_t pos = it->second;
  links_.erase(links_.begin() + static_cast<std::ptrdiff_t>(pos));
  link_index_.erase(it);
  for (auto& [key, idx] : link_index_) {
    if (idx > pos) --idx;
  }
  return true;
}

const RequirementLink* Stn::find_link(const PointId& from, const PointId& to) const {
  auto fi = index_.find(from);
  auto ti = index_.find(to);
  if (fi == index_.end() || ti == index_.end()) return nullptr;
  auto it = link_index_.find({fi->second, ti->second});
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

void Stn::merge(const Stn& other) {
  if (other.origin() != origin()) {
    throw Error(ErrorCode::kMalformedNetwork,
                "cannot merge networks with origins " + origin() + " and " + other.origin());
  }
  for (const auto& p : other.points()) add_point(p);
  for (const auto& l : other.links()) add_link(l);
}

std::optional<Bound> DistanceGraph::weight(const PointId& from, const PointId& to) const {
  std::optional<Bound> best;
  for (const auto& e : edges) {
    if (points[e.from] == from && points[e.to] == to) {
      best = best ? min(*best, e.weight) : e.weight;
    }
  }
  return best;
}

DistanceGraph collapse(const DistanceGraph& g) {
  std::map<std::pair<std::size_t, std::size_t>, Bound> best;
  for (const auto& e : g.edges) {
    auto [it, fresh] = best.emplace(std::make_pair(e.from, e.to), e.weight);
    if (!fresh) it->second = min(it->second, e.weight);
  }
  DistanceGraph out;
  out.points = g.points;
  out.edges.reserve(best.size());
  for (const auto& [key, w] : best) out.edges.push_back({key.first, key.second, w});
  return out;
}

DistanceGraph to_distance_graph(const Stn& stn) {
  DistanceGraph g;
  g.points = stn.points();
  for (const auto& l : stn.links()) {
    std::size_t x = stn.index_of(l.from);
    std::size_t y = stn.index_of(l.to);
    g.edges.push_back({x, y, l.upper});
    g.edges.push_back({y, x, -l.lower});
  }
  return collapse(g);
}

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), d_(n * n, Bound::pos_inf()) {
  for (std::size_t i = 0; i < n; ++i) at(i, i) = Bound(0);
}

namespace {

// Bellman-Ford from a virtual source joined to every vertex with weight 0.
std::vector<std::size_t> find_negative_cycle(const DistanceGraph& g) {
  const std::size_t n = g.points.size();
  std::vector<Bound> dist(n, Bound(0));
  std::vector<std::size_t> pred(n, n);
  std::size_t touched = n;
  for (std::size_t iter = 0; iter <= n; ++iter) {
    touched = n;
    for (const auto& e : g.edges) {
      if (!e.weight.is_finite()) continue;
      Bound cand = dist[e.from] + e.weight;
      if (cand < dist[e.to]) {
        dist[e.to] = cand;
        pred[e.to] = e.from;
        touched = e.to;
      }
    }
    if (touched == n) return {};
  }
  std::size_t x = touched;
  for (std::size_t i = 0; i < n; ++i) x = pred[x];
  std::vector<std::size_t> cycle{x};
  for (std::size_t v = pred[x]; v != x; v = pred[v]) cycle.push_back(v);
  std::reverse(cycle.begin(), cycle.end());
  // Rotate so the cycle starts at its smallest index; keeps witnesses stable.
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

}  // namespace

ShortestPaths all_pairs_shortest_paths(const DistanceGraph& g) {
  const std::size_t n = g.points.size();
  ShortestPaths sp;
  sp.dist = DistanceMatrix(n);
  for (const auto& e : g.edges) {
    Bound& cell = sp.dist.at(e.from, e.to);
    cell = min(cell, e.weight);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Bound& ik = sp.dist.at(i, k);
      if (ik.is_pos_inf()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Bound& kj = sp.dist.at(k, j);
        if (kj.is_pos_inf()) continue;
        Bound cand = ik + kj;
        if (cand < sp.dist.at(i, j)) sp.dist.at(i, j) = cand;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sp.dist.at(i, i) < Bound(0)) {
      sp.consistent = false;
      break;
    }
  }
  if (!sp.consistent) sp.negative_cycle = find_negative_cycle(g);
  return sp;
}

ConsistencyReport check_consistency(const Stn& stn) {
  DistanceGraph g = to_distance_graph(stn);
  ShortestPaths sp = all_pairs_shortest_paths(g);
  ConsistencyReport report;
  report.consistent = sp.consistent;
  if (!sp.consistent) {
    for (std::size_t i : sp.negative_cycle) report.negative_cycle.push_back(g.points[i]);
    return report;
  }
  const std::size_t z = 0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    report.ranges.emplace(g.points[i], Range{-sp.dist.at(i, z), sp.dist.at(z, i)});
  }
  return report;
}

Range feasible_range(const Stn& stn, const PointId& x) {
  stn.index_of(x);
  ConsistencyReport r = check_consistency(stn);
  if (!r.consistent) throw Error(ErrorCode::kInconsistentNetwork, "network has a negative cycle");
  return r.ranges.at(x);
}

Stn assign(const Stn& stn, const PointId& x, const Bound& v) {
  Range range = feasible_range(stn, x);
  if (!v.is_finite() || !range.contains(v)) {
    throw Error(ErrorCode::kValueOutOfRange, x + " = " + v.to_string() + " outside [" +
                                                 range.lower.to_string() + "," +
                                                 range.upper.to_string() + "]");
  }
  if (x == stn.origin()) return stn;
  Stn out = stn;
  RequirementLink link{stn.origin(), x, v, v, {}};
  if (const RequirementLink* prev = stn.find_link(stn.origin(), x)) link.roles = prev->roles;
  out.set_link(std::move(link));
  return out;
}

}  // namespace tacwf
