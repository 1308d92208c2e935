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

#ifndef TACWF_STNU_HPP_
#define TACWF_STNU_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "tacwf/stn.hpp"

namespace tacwf {

/// A contingent link A =[x,y]=> C: C happens between x and y after A, chosen by nature.
struct ContingentLink {
  PointId activation;
  PointId contingent;
  Bound lower;
  Bound upper;

  friend bool operator==(const ContingentLink&, const ContingentLink&) = default;
};

enum class PointKind { kControl, kActivation, kContingent };

/// An STN with uncertainty. The base network always carries A -[x,y]-> C for
/// every contingent link, so projecting the base alone treats contingents as
/// ordinary requirements.
class Stnu {
 public:
  Stnu() = default;
  explicit Stnu(Stn base) : base_(std::move(base)) {}

  const Stn& base() const { return base_; }
  Stn& base() { return base_; }
  const std::vector<ContingentLink>& contingents() const { return contingents_; }

  /// Throws Error(MalformedNetwork) unless 0 < x < y < inf, both points exist,
  /// A differs from C and C is not already contingent.
  void add_contingent(ContingentLink link);

  const ContingentLink* contingent_link(const PointId& c) const;
  PointKind kind(const PointId& p) const;
  bool is_contingent(const PointId& p) const { return contingent_link(p) != nullptr; }

 private:
  Stn base_;
  std::vector<ContingentLink> contingents_;
};

enum class EdgeLabel : std::uint8_t { kNone, kLowerCase, kUpperCase };

struct LabeledEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Bound weight;
  EdgeLabel label = EdgeLabel::kNone;
  /// Index of the contingent point named by the label; unused for ordinary edges.
  std::size_t contingent = 0;

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

struct ContingentInfo {
  std::size_t activation = 0;
  std::size_t contingent = 0;
  Bound lower;
  Bound upper;
};

/// Labeled distance graph. One weight per (from, to, label, contingent); ordinary
/// and labeled edges over the same pair coexist.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::vector<PointId> points) : points_(std::move(points)) {}

  const std::vector<PointId>& points() const { return points_; }
  std::size_t index_of(const PointId& p) const;

  /// Inserts or tightens; returns true when the stored weight decreased.
  bool add(const LabeledEdge& e);

  std::vector<LabeledEdge> edges() const;
  std::vector<LabeledEdge> edges(EdgeLabel label) const;
  std::optional<Bound> weight(const PointId& from, const PointId& to,
                              EdgeLabel label = EdgeLabel::kNone,
                              const PointId& contingent = {}) const;
  std::size_t edge_count() const { return edges_.size(); }

  /// Contingent links known to this graph, indexed by contingent point.
  const std::vector<ContingentInfo>& contingents() const { return contingents_; }
  void add_contingent(ContingentInfo c) { contingents_.push_back(c); }

 private:
  using Key = std::tuple<std::size_t, std::size_t, EdgeLabel, std::size_t>;
  std::vector<PointId> points_;
  std::map<Key, Bound> edges_;
  std::vector<ContingentInfo> contingents_;
};

LabeledGraph to_labeled_distance_graph(const Stnu& stnu);

/// Drops lower-case edges, unlabels upper-case ones, keeps the minimum per pair.
DistanceGraph allmax_projection(const LabeledGraph& g);

struct ReductionResult {
  LabeledGraph graph;
  bool changed = false;
};

/// One saturation pass: no-case closure, then upper-case, lower-case,
/// cross-case and label-removal reductions.
ReductionResult apply_reduction_round(const LabeledGraph& g);

struct DcVerdict {
  bool controllable = false;
  std::vector<PointId> witness;
  Bound witness_weight{0};
  std::size_t rounds_used = 0;
};

DcVerdict check_dynamic_controllability(const Stnu& stnu);

/// Contingent durations keyed by contingent point.
using Situation = std::map<PointId, Bound>;

/// Replaces every contingent link with a fixed-distance requirement link.
/// Throws Error(IncompleteSituation) or Error(DurationOutOfBounds).
Stn project(const Stnu& stnu, const Situation& omega);

/// Exhaustive game search over a time grid of width `step`. Decisions at a tick
/// may react to contingents observed at that tick or earlier. Times are
/// restricted to t >= 0 and to a horizon of the sum of all finite bounds.
/// Throws Error(InstanceTooLarge) beyond four contingents or an oversized grid,
/// and Error(ValueOutOfRange) when `step` does not divide every finite bound.
bool brute_force_dc_oracle(const Stnu& stnu, const Bound& step);

}  // namespace tacwf

#endif  // TACWF_STNU_HPP_
