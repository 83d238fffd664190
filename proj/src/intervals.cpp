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

#include "diagfun/intervals.hpp"

#include <algorithm>

namespace diagfun {

IntervalSet::IntervalSet(std::initializer_list<Interval> runs)
    : IntervalSet(from_runs(std::vector<Interval>(runs))) {}

IntervalSet IntervalSet::from_runs(std::vector<Interval> runs) {
  std::erase_if(runs, [](const Interval& r) { return r.lo > r.hi; });
  std::sort(runs.begin(), runs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalSet out;
  for (const auto& r : runs) {
    // merge overlapping and adjacent runs
    if (!out.runs_.empty() && r.lo <= out.runs_.back().hi + 1) {
      out.runs_.back().hi = std::max(out.runs_.back().hi, r.hi);
    } else {
      out.runs_.push_back(r);
    }
  }
  return out;
}

IntervalSet IntervalSet::from_values(std::span<const Index> values) {
  std::vector<Interval> runs;
  runs.reserve(values.size());
  for (Index v : values) runs.push_back({v, v});
  return from_runs(std::move(runs));
}

IntervalSet IntervalSet::range(Index lo, Index hi) {
  IntervalSet out;
  if (lo <= hi) out.runs_.push_back({lo, hi});
  return out;
}

Index IntervalSet::size() const {
  Index total = 0;
  for (const auto& r : runs_) total += r.length();
  return total;
}

bool IntervalSet::contains(Index x) const {
  auto it = std::upper_bound(
      runs_.begin(), runs_.end(), x,
      [](Index v, const Interval& r) { return v < r.lo; });
  if (it == runs_.begin()) return false;
  --it;
  return x <= it->hi;
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  return intersect(*this, other) == *this;
}

IntervalSet IntervalSet::shifted(Index z) const {
  IntervalSet out = *this;
  for (auto& r : out.runs_) {
    r.lo += z;
    r.hi += z;
  }
  return out;
}

IntervalSet IntervalSet::negated() const {
  IntervalSet out;
  out.runs_.reserve(runs_.size());
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it)
    out.runs_.push_back({-it->hi, -it->lo});
  return out;
}

IntervalSet IntervalSet::clipped(Index lo, Index hi) const {
  IntervalSet out;
  for (const auto& r : runs_) {
    Index a = std::max(r.lo, lo);
    Index b = std::min(r.hi, hi);
    if (a <= b) out.runs_.push_back({a, b});
  }
  return out;
}

std::vector<Index> IntervalSet::values() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (const auto& r : runs_)
    for (Index v = r.lo; v <= r.hi; ++v) out.push_back(v);
  return out;
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> runs(a.runs_.begin(), a.runs_.end());
  runs.insert(runs.end(), b.runs_.begin(), b.runs_.end());
  return IntervalSet::from_runs(std::move(runs));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < a.runs_.size() && j < b.runs_.size()) {
    Index lo = std::max(a.runs_[i].lo, b.runs_[j].lo);
    Index hi = std::min(a.runs_[i].hi, b.runs_[j].hi);
    if (lo <= hi) out.runs_.push_back({lo, hi});
    if (a.runs_[i].hi < b.runs_[j].hi) ++i; else ++j;
  }
  return out;
}

IntervalSet minkowski(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> runs;
  runs.reserve(a.runs_.size() * b.runs_.size());
  for (const auto& x : a.runs_)
    for (const auto& y : b.runs_) runs.push_back({x.lo + y.lo, x.hi + y.hi});
  return IntervalSet::from_runs(std::move(runs));
}

}  // namespace diagfun
