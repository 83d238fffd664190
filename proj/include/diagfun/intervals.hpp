// Copyright 2026 The diagfun Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace diagfun {

using Index = std::ptrdiff_t;

/// Closed integer interval [lo, hi].
struct Interval {
  Index lo;
  Index hi;

  Index length() const { return hi - lo + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite set of integers stored as sorted, disjoint, non-adjacent runs.
///
/// All set algebra works on the runs directly, so cost scales with the
/// number of runs rather than the number of members.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> runs);

  /// Normalizes arbitrary (possibly overlapping, unsorted) runs.
  static IntervalSet from_runs(std::vector<Interval> runs);
  static IntervalSet from_values(std::span<const Index> values);
  static IntervalSet range(Index lo, Index hi);

  bool empty() const { return runs_.empty(); }
  Index size() const;
  std::span<const Interval> runs() const { return runs_; }
  Index min() const { return runs_.front().lo; }
  Index max() const { return runs_.back().hi; }

  /// O(log #runs).
  bool contains(Index x) const;
  bool subset_of(const IntervalSet& other) const;

  IntervalSet shifted(Index z) const;
  IntervalSet negated() const;
  IntervalSet clipped(Index lo, Index hi) const;

  std::vector<Index> values() const;

  friend IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
  /// {x + y : x in a, y in b}
  friend IntervalSet minkowski(const IntervalSet& a, const IntervalSet& b);

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> runs_;
};

IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet minkowski(const IntervalSet& a, const IntervalSet& b);

}  // namespace diagfun
