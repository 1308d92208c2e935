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

#ifndef TACWF_STN_HPP_
#define TACWF_STN_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tacwf/bound.hpp"

namespace tacwf {

/// Time points are identified by their display name.
using PointId = std::string;

/// A requirement link `from -[lower, upper]-> to`, i.e. lower <= to - from <= upper.
struct RequirementLink {
  PointId from;
  PointId to;
  Bound lower{0};
  Bound upper = Bound::pos_inf();
  /// Role label attached by the connection mapping; empty for plain links.
  std::vector<std::string> roles;

  friend bool operator==(const RequirementLink&, const RequirementLink&) = default;
};

/// A Simple Temporal Network: points plus requirement links, with a single origin.
///
/// At most one link is stored per ordered pair. Adding a second link over the
/// same pair keeps the intersection of both ranges, even when it is empty; the
/// emptiness then surfaces as an inconsistency.
class Stn {
 public:
  explicit Stn(PointId origin = "Z");

  const PointId& origin() const { return points_.front(); }
  const std::vector<PointId>& points() const { return points_; }
  const std::vector<RequirementLink>& links() const { return links_; }
  std::size_t size() const { return points_.size(); }

  /// Adds a point; adding an existing name is a no-op.
  void add_point(const PointId& p);
  bool has_point(const PointId& p) const { return index_.count(p) != 0; }

  /// Index of `p` in points(); throws Error(UnknownPoint).
  std::size_t index_of(const PointId& p) const;

  /// Intersects with an existing link over the same pair.
  /// Throws Error(MalformedNetwork) on unknown endpoints, a self loop, or lower > upper.
  void add_link(RequirementLink link);

  /// Replaces any existing link over the same pair.
  void set_link(RequirementLink link);

  bool remove_link(const PointId& from, const PointId& to);
  const RequirementLink* find_link(const PointId& from, const PointId& to) const;

  /// Adds every point and link of `other`; both networks must share the origin name.
  void merge(const Stn& other);

 private:
  void check_link(const RequirementLink& link) const;

  std::vector<PointId> points_;
  std::unordered_map<PointId, std::size_t> index_;
  std::vector<RequirementLink> links_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> link_index_;
};

struct WeightedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Bound weight;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Directed weighted graph over the points of a network. Indices refer to `points`.
struct DistanceGraph {
  std::vector<PointId> points;
  std::vector<WeightedEdge> edges;

  /// Weight of the edge from -> to, if any. Linear scan.
  std::optional<Bound> weight(const PointId& from, const PointId& to) const;

  friend bool operator==(const DistanceGraph&, const DistanceGraph&) = default;
};

/// Keeps only the minimum weight per ordered pair, sorted by (from, to).
DistanceGraph collapse(const DistanceGraph& g);

/// X -[x,y]-> Y becomes X -y-> Y and Y -(-x)-> X; infinite weights are kept explicitly.
DistanceGraph to_distance_graph(const Stn& stn);

/// Dense shortest-path matrix, row-major: at(i, j) is the shortest i -> j distance.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  Bound& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  const Bound& at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<Bound> d_;
};

struct ShortestPaths {
  bool consistent = true;
  DistanceMatrix dist;
  /// Point indices along a negative cycle, in edge order; empty when consistent.
  std::vector<std::size_t> negative_cycle;
};

/// All-pairs shortest paths over `g`. On a negative cycle, `dist` is left unspecified.
ShortestPaths all_pairs_shortest_paths(const DistanceGraph& g);

struct Range {
  Bound lower;
  Bound upper;

  bool contains(const Bound& v) const { return lower <= v && v <= upper; }
  bool singleton() const { return lower == upper; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct ConsistencyReport {
  bool consistent = true;
  std::vector<PointId> negative_cycle;
  std::map<PointId, Range> ranges;
};

ConsistencyReport check_consistency(const Stn& stn);

/// Throws Error(UnknownPoint) or Error(InconsistentNetwork).
Range feasible_range(const Stn& stn, const PointId& x);

/// Fixes `x` to `v` by replacing the Z -> x link with [v, v].
/// Throws Error(UnknownPoint), Error(InconsistentNetwork) or Error(ValueOutOfRange).
Stn assign(const Stn& stn, const PointId& x, const Bound& v);

}  // namespace tacwf

#endif  // TACWF_STN_HPP_
