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

// Game-tree search for dynamic controllability on a discrete grid.
//
// At every tick nature first decides which pending contingents occur, then the
// agent, having seen them, picks the set of control points to execute. The
// agent wins if every point gets executed and no constraint is ever broken.

#include <cstdint>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "tacwf/error.hpp"
#include "tacwf/stnu.hpp"

namespace tacwf {
namespace {

constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::max();
constexpr std::int16_t kUnset = -1;
constexpr std::size_t kMaxContingents = 4;
constexpr std::size_t kMaxPoints = 10;
constexpr std::int64_t kMaxTicks = 4000;

struct Game {
  std::size_t n = 0;
  std::vector<std::int64_t> ub;  // ub[i*n+j]: t_j - t_i <= ub
  std::vector<int> activation;   // per point; -1 unless contingent
  std::vector<std::int64_t> cmin;
  std::vector<std::int64_t> cmax;
  std::vector<std::size_t> controls;
  std::int64_t horizon = 0;
  std::unordered_map<std::string, bool> memo;

  std::int64_t bound(std::size_t i, std::size_t j) const { return ub[i * n + j]; }

  bool consistent_with(const std::vector<std::int16_t>& t, std::size_t p) const {
    for (std::size_t q = 0; q < n; ++q) {
      if (t[q] == kUnset || q == p) continue;
      std::int64_t pq = bound(q, p);
      std::int64_t qp = bound(p, q);
      if (pq != kNoBound && t[p] - t[q] > pq) return false;
      if (qp != kNoBound && t[q] - t[p] > qp) return false;
    }
    return true;
  }

  // True when some unexecuted point can no longer be placed at `next` or later.
  bool deadline_passed(const std::vector<std::int16_t>& t, std::int64_t next) const {
    for (std::size_t y = 0; y < n; ++y) {
      if (t[y] != kUnset) continue;
      for (std::size_t x = 0; x < n; ++x) {
        if (t[x] == kUnset) continue;
        std::int64_t b = bound(x, y);
        if (b != kNoBound && t[x] + b < next) return true;
      }
    }
    return false;
  }

  static std::string key(std::int64_t tick, const std::vector<std::int16_t>& t) {
    std::string k(sizeof(std::int16_t) * (t.size() + 1), '\0');
    auto tk = static_cast<std::int16_t>(tick);
    std::memcpy(k.data(), &tk, sizeof tk);
    std::memcpy(k.data() + sizeof tk, t.data(), sizeof(std::int16_t) * t.size());
    return k;
  }

  bool agent_wins(std::int64_t tick, std::vector<std::int16_t>& t) {
    std::string k = key(tick, t);
    if (auto it = memo.find(k); it != memo.end()) return it->second;

    std::vector<std::size_t> available;
    std::vector<std::size_t> forced;
    for (std::size_t c = 0; c < n; ++c) {
      if (activation[c] < 0 || t[c] != kUnset) continue;
      std::int16_t ta = t[static_cast<std::size_t>(activation[c])];
      if (ta == kUnset) continue;
      if (tick < ta + cmin[c]) continue;
      available.push_back(c);
      if (tick == ta + cmax[c]) forced.push_back(c);
    }

    bool result = true;
    const std::size_t na = available.size();
    for (std::uint32_t mask = 0; mask < (1u << na) && result; ++mask) {
      bool skip = false;
      for (std::size_t f : forced) {
        for (std::size_t i = 0; i < na; ++i) {
          if (available[i] == f && !(mask & (1u << i))) skip = true;
        }
      }
      if (skip) continue;
      std::vector<std::int16_t> after = t;
      bool ok = true;
      for (std::size_t i = 0; i < na; ++i) {
        if (mask & (1u << i)) after[available[i]] = static_cast<std::int16_t>(tick);
      }
      for (std::size_t i = 0; i < na && ok; ++i) {
        if (mask & (1u << i)) ok = consistent_with(after, available[i]);
      }
      if (!ok || !agent_responds(tick, after)) result = false;
    }
    memo.emplace(std::move(k), result);
    return result;
  }

  bool agent_responds(std::int64_t tick, const std::vector<std::int16_t>& t) {
    std::vector<std::size_t> open;
    for (std::size_t p : controls) {
      if (t[p] == kUnset) open.push_back(p);
    }
    const std::size_t no = open.size();
    for (std::uint32_t mask = 0; mask < (1u << no); ++mask) {
      std::vector<std::int16_t> after = t;
      bool ok = true;
      for (std::size_t i = 0; i < no; ++i) {
        if (mask & (1u << i)) after[open[i]] = static_cast<std::int16_t>(tick);
      }
      for (std::size_t i = 0; i < no && ok; ++i) {
        if (mask & (1u << i)) ok = consistent_with(after, open[i]);
      }
      if (!ok) continue;
      bool done = true;
      for (std::size_t p = 0; p < n; ++p) done = done && after[p] != kUnset;
      if (done) return true;
      if (tick + 1 > horizon || deadline_passed(after, tick + 1)) continue;
      if (agent_wins(tick + 1, after)) return true;
    }
    return false;
  }
};

std::int64_t to_ticks(const Bound& b, const Bound& step) {
  Rational q = b.value() / step.value();
  if (q.denominator() != 1) {
    throw Error(ErrorCode::kValueOutOfRange,
                "grid step " + step.to_string() + " does not divide " + b.to_string());
  }
  return q.numerator();
}

}  // namespace

bool brute_force_dc_oracle(const Stnu& stnu, const Bound& step) {
  if (!step.is_finite() || !(Bound(0) < step)) {
    throw Error(ErrorCode::kValueOutOfRange, "grid step must be positive");
  }
  if (stnu.contingents().size() > kMaxContingents || stnu.base().size() > kMaxPoints) {
    throw Error(ErrorCode::kInstanceTooLarge, "oracle handles at most 4 contingents and 10 points");
  }
  const Stn& base = stnu.base();
  Game game;
  game.n = base.size();
  game.ub.assign(game.n * game.n, kNoBound);
  game.activation.assign(game.n, -1);
  game.cmin.assign(game.n, 0);
  game.cmax.assign(game.n, 0);

  std::int64_t horizon = 0;
  for (const auto& l : base.links()) {
    for (const Bound* b : {&l.lower, &l.upper}) {
      if (b->is_finite()) {
        std::int64_t v = to_ticks(*b, step);
        horizon += v < 0 ? -v : v;
      }
    }
  }
  if (horizon > kMaxTicks) {
    throw Error(ErrorCode::kInstanceTooLarge, "grid horizon of " + std::to_string(horizon) + " ticks");
  }
  game.horizon = horizon;

  for (const auto& e : to_distance_graph(base).edges) {
    if (e.weight.is_finite()) game.ub[e.from * game.n + e.to] = to_ticks(e.weight, step);
  }
  for (const auto& l : stnu.contingents()) {
    std::size_t c = base.index_of(l.contingent);
    game.activation[c] = static_cast<int>(base.index_of(l.activation));
    game.cmin[c] = to_ticks(l.lower, step);
    game.cmax[c] = to_ticks(l.upper, step);
  }
  for (std::size_t p = 1; p < game.n; ++p) {
    if (game.activation[p] < 0) game.controls.push_back(p);
  }

  std::vector<std::int16_t> t(game.n, kUnset);
  t[0] = 0;
  if (!game.consistent_with(t, 0)) return false;
  // Tick 0 starts with the origin already placed; nothing is pending yet.
  return game.agent_responds(0, t);
}

}  // namespace tacwf
