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

#include "tacwf/stnu.hpp"

#include <algorithm>

#include "tacwf/error.hpp"

namespace tacwf {

void Stnu::add_contingent(ContingentLink link) {
  const std::string name = link.activation + " => " + link.contingent;
  if (!base_.has_point(link.activation) || !base_.has_point(link.contingent)) {
    throw Error(ErrorCode::kMalformedNetwork, "contingent link " + name + " references an unknown point");
  }
  if (link.activation == link.contingent) {
    throw Error(ErrorCode::kMalformedNetwork, "contingent link " + name + " is a self loop");
  }
  if (!(Bound(0) < link.lower && link.lower < link.upper && link.upper.is_finite())) {
    throw Error(ErrorCode::kMalformedNetwork, "contingent link " + name + " needs 0 < x < y < inf, got [" +
                                                  link.lower.to_string() + "," +
                                                  link.upper.to_string() + "]");
  }
  if (is_contingent(link.contingent)) {
    throw Error(ErrorCode::kMalformedNetwork, link.contingent + " is already a contingent point");
  }
  if (link.contingent == base_.origin()) {
    throw Error(ErrorCode::kMalformedNetwork, "the origin cannot be contingent");
  }
  base_.add_link({link.activation, link.contingent, link.lower, link.upper, {}});
  contingents_.push_back(std::move(link));
}

const ContingentLink* Stnu::contingent_link(const PointId& c) const {
  for (const auto& l : contingents_) {
    if (l.contingent == c) return &l;
  }
  return nullptr;
}

PointKind Stnu::kind(const PointId& p) const {
  base_.index_of(p);
  if (is_contingent(p)) return PointKind::kContingent;
  for (const auto& l : contingents_) {
    if (l.activation == p) return PointKind::kActivation;
  }
  return PointKind::kControl;
}

std::size_t LabeledGraph::index_of(const PointId& p) const {
  auto it = std::find(points_.begin(), points_.end(), p);
  if (it == points_.end()) throw Error(ErrorCode::kUnknownPoint, p);
  return static_cast<std::size_t>(it - points_.begin());
}

bool LabeledGraph::add(const LabeledEdge& e) {
  if (e.from == e.to && !(e.weight < Bound(0))) return false;
  if (e.weight.is_pos_inf()) return false;
  std::size_t c = e.label == EdgeLabel::kNone ? 0 : e.contingent;
  Key key{e.from, e.to, e.label, c};
  auto [it, fresh] = edges_.emplace(key, e.weight);
  if (fresh) return true;
  if (e.weight < it->second) {
    it->second = e.weight;
    return true;
  }
  return false;
}

std::vector<LabeledEdge> LabeledGraph::edges() const {
  std::vector<LabeledEdge> out;
  out.reserve(edges_.size());
  for (const auto& [key, w] : edges_) {
    out.push_back({std::get<0>(key), std::get<1>(key), w, std::get<2>(key), std::get<3>(key)});
  }
  return out;
}

std::vector<LabeledEdge> LabeledGraph::edges(EdgeLabel label) const {
  std::vector<LabeledEdge> out;
  for (const auto& [key, w] : edges_) {
    if (std::get<2>(key) == label) {
      out.push_back({std::get<0>(key), std::get<1>(key), w, label, std::get<3>(key)});
    }
  }
  return out;
}

std::optional<Bound> LabeledGraph::weight(const PointId& from, const PointId& to, EdgeLabel label,
                                          const PointId& contingent) const {
  std::size_t c = label == EdgeLabel::kNone ? 0 : index_of(contingent);
  auto it = edges_.find(Key{index_of(from), index_of(to), label, c});
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

LabeledGraph to_labeled_distance_graph(const Stnu& stnu) {
  DistanceGraph plain = to_distance_graph(stnu.base());
  LabeledGraph g(plain.points);
  for (const auto& e : plain.edges) g.add({e.from, e.to, e.weight, EdgeLabel::kNone, 0});
  for (const auto& l : stnu.contingents()) {
    std::size_t a = stnu.base().index_of(l.activation);
    std::size_t c = stnu.base().index_of(l.contingent);
    g.add({a, c, l.lower, EdgeLabel::kLowerCase, c});
    g.add({c, a, -l.upper, EdgeLabel::kUpperCase, c});
    g.add_contingent({a, c, l.lower, l.upper});
  }
  return g;
}

DistanceGraph allmax_projection(const LabeledGraph& g) {
  DistanceGraph d;
  d.points = g.points();
  for (const auto& e : g.edges()) {
    if (e.label == EdgeLabel::kLowerCase) continue;
    d.edges.push_back({e.from, e.to, e.weight});
  }
  return collapse(d);
}

ReductionResult apply_reduction_round(const LabeledGraph& g) {
  const std::size_t n = g.points().size();
  ReductionResult out{g, false};
  LabeledGraph& h = out.graph;

  // No-case: saturate ordinary edges.
  DistanceGraph ordinary;
  ordinary.points = g.points();
  for (const auto& e : g.edges(EdgeLabel::kNone)) ordinary.edges.push_back({e.from, e.to, e.weight});
  ShortestPaths sp = all_pairs_shortest_paths(ordinary);
  const DistanceMatrix& d = sp.dist;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && d.at(i, j).is_finite()) {
        out.changed |= h.add({i, j, d.at(i, j), EdgeLabel::kNone, 0});
      }
    }
  }

  // Upper-case: U -> W ordinary, W -C:w-> X.
  for (const auto& e : g.edges(EdgeLabel::kUpperCase)) {
    for (std::size_t u = 0; u < n; ++u) {
      if (u == e.contingent) continue;
      const Bound& uw = d.at(u, e.from);
      if (!uw.is_finite()) continue;
      out.changed |= h.add({u, e.to, uw + e.weight, EdgeLabel::kUpperCase, e.contingent});
    }
  }

  for (const auto& c : g.contingents()) {
    // Lower-case: A -c:x-> C, C -> X ordinary and negative.
    for (std::size_t x = 0; x < n; ++x) {
      const Bound& cx = d.at(c.contingent, x);
      if (x == c.contingent || !cx.is_finite() || !(cx < Bound(0))) continue;
      out.changed |= h.add({c.activation, x, c.lower + cx, EdgeLabel::kNone, 0});
    }
    // Cross-case: A -c:x-> C, C -C':w-> X with w < 0 and C' != C.
    for (const auto& e : h.edges(EdgeLabel::kUpperCase)) {
      if (e.from != c.contingent || e.contingent == c.contingent || !(e.weight < Bound(0))) continue;
      out.changed |= h.add({c.activation, e.to, c.lower + e.weight, EdgeLabel::kUpperCase, e.contingent});
    }
  }

  // Label removal: U -C:v-> A with v >= -x(C).
  for (const auto& e : h.edges(EdgeLabel::kUpperCase)) {
    for (const auto& c : g.contingents()) {
      if (c.contingent != e.contingent) continue;
      if (e.weight >= -c.lower) out.changed |= h.add({e.from, e.to, e.weight, EdgeLabel::kNone, 0});
    }
  }
  return out;
}

DcVerdict check_dynamic_controllability(const Stnu& stnu) {
  LabeledGraph g = to_labeled_distance_graph(stnu);
  const std::size_t cutoff = g.points().size() + 1;
  DcVerdict verdict;
  for (;;) {
    DistanceGraph am = allmax_projection(g);
    ShortestPaths sp = all_pairs_shortest_paths(am);
    if (!sp.consistent) {
      verdict.controllable = false;
      const auto& cyc = sp.negative_cycle;
      Bound total(0);
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        std::size_t from = cyc[i];
        std::size_t to = cyc[(i + 1) % cyc.size()];
        Bound w = Bound::pos_inf();
        for (const auto& e : am.edges) {
          if (e.from == from && e.to == to) w = min(w, e.weight);
        }
        total += w;
        verdict.witness.push_back(am.points[from]);
      }
      verdict.witness_weight = total;
      return verdict;
    }
    if (verdict.rounds_used >= cutoff) break;
    ReductionResult r = apply_reduction_round(g);
    ++verdict.rounds_used;
    if (!r.changed) break;
    g = std::move(r.graph);
  }
  verdict.controllable = true;
  return verdict;
}

Stn project(const Stnu& stnu, const Situation& omega) {
  for (const auto& [point, d] : omega) {
    if (!stnu.is_contingent(point)) {
      throw Error(ErrorCode::kIncompleteSituation, point + " is not a contingent point");
    }
  }
  Stn out = stnu.base();
  for (const auto& l : stnu.contingents()) {
    auto it = omega.find(l.contingent);
    if (it == omega.end()) {
      throw Error(ErrorCode::kIncompleteSituation, "no duration for " + l.contingent);
    }
    const Bound& d = it->second;
    if (d < l.lower || l.upper < d) {
      throw Error(ErrorCode::kDurationOutOfBounds, l.contingent + " duration " + d.to_string() +
                                                       " outside [" + l.lower.to_string() + "," +
                                                       l.upper.to_string() + "]");
    }
    out.set_link({l.activation, l.contingent, d, d, {}});
  }
  return out;
}

}  // namespace tacwf
