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

#include "diagfun/diagsets.hpp"

#include <algorithm>
#include <string>

#include "diagfun/error.hpp"

namespace diagfun {

DiagSet::DiagSet(Index n, IntervalSet diagonals)
    : n_(n), set_(diagonals.clipped(-(n - 1), n - 1)) {
  if (n < 1) throw Error(Errc::invalid_argument, "DiagSet: n must be >= 1");
}

DiagSet DiagSet::banded(Index n, Index lower, Index upper) {
  return DiagSet(n, IntervalSet::range(-lower, upper));
}

IndexSet::IndexSet(Index n, const IntervalSet& members)
    : n_(n), set_(members.clipped(1, n)) {
  before_.reserve(set_.runs().size());
  for (const auto& run : set_.runs()) {
    before_.push_back(size_);
    size_ += run.length();
  }
}

Index IndexSet::order_or_zero(Index j) const {
  auto runs = set_.runs();
  auto it = std::upper_bound(
      runs.begin(), runs.end(), j,
      [](Index v, const Interval& r) { return v < r.lo; });
  if (it == runs.begin()) return 0;
  --it;
  if (j > it->hi) return 0;
  return before_[static_cast<std::size_t>(it - runs.begin())] + (j - it->lo) + 1;
}

Index IndexSet::order(Index j) const {
  Index o = order_or_zero(j);
  if (o == 0)
    throw Error(Errc::out_of_range,
                "IndexSet::order: " + std::to_string(j) + " is not a member");
  return o;
}

PairSet PairSet::tile(Index n, Interval rows, Interval diags) {
  PairSet out(n);
  for (Index d = diags.lo; d <= diags.hi; ++d)
    out.insert_rows(d, IntervalSet::range(rows.lo, rows.hi));
  return out;
}

void PairSet::insert(Index i, Index j) {
  insert_rows(j - i, IntervalSet::range(i, i));
}

void PairSet::insert_rows(Index d, const IntervalSet& rows) {
  IntervalSet valid = rows.clipped(std::max<Index>(1, 1 - d),
                                   std::min<Index>(n_, n_ - d));
  if (valid.empty()) return;
  auto [it, inserted] = by_diag_.try_emplace(d, valid);
  if (!inserted) it->second = unite(it->second, valid);
}

bool PairSet::contains(Index i, Index j) const {
  auto it = by_diag_.find(j - i);
  return it != by_diag_.end() && it->second.contains(i);
}

Index PairSet::size() const {
  Index total = 0;
  for (const auto& [d, rows] : by_diag_) total += rows.size();
  return total;
}

DiagSet minkowski_sum(const DiagSet& a, const DiagSet& b) {
  if (a.n() != b.n())
    throw Error(Errc::dimension_mismatch, "minkowski_sum: dimension mismatch");
  return DiagSet(a.n(), minkowski(a.set(), b.set()));
}

std::vector<DiagSet> s_sets(const DiagSet& nd, int k) {
  if (k < 0) throw Error(Errc::invalid_argument, "s_sets: k must be >= 0");
  std::vector<DiagSet> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  out.emplace_back(nd.n(), IntervalSet::range(0, 0));
  for (int p = 1; p <= k; ++p) out.push_back(minkowski_sum(out.back(), nd));
  return out;
}

DiagSet u_set(const DiagSet& nd, int k) {
  IntervalSet acc;
  for (const auto& s : s_sets(nd, k)) acc = unite(acc, s.set());
  return DiagSet(nd.n(), acc);
}

DeltaBuilder::DeltaBuilder(const DiagSet& nd, int k)
    : n_(nd.n()), k_(k), s_(s_sets(nd, k)) {
  IntervalSet acc;
  for (const auto& s : s_) {
    acc = unite(acc, s.set());
    u_.emplace_back(n_, acc);
  }
}

IntervalSet DeltaBuilder::delta_unclipped(Index i, Index j) const {
  // t is on a path i -> t -> j of total length <= k iff t - i in S_l and
  // j - t in U_{k-l} for some l.
  IntervalSet out;
  for (int l = 0; l <= k_; ++l) {
    IntervalSet from_i = s_[static_cast<std::size_t>(l)].set().shifted(i);
    IntervalSet to_j =
        u_[static_cast<std::size_t>(k_ - l)].set().negated().shifted(j);
    out = unite(out, intersect(from_i, to_j));
  }
  return out;
}

IndexSet DeltaBuilder::delta(Index i, Index j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw Error(Errc::out_of_range, "delta_set: index out of range");
  return IndexSet(n_, delta_unclipped(i, j));
}

IntervalSet DeltaBuilder::union_unclipped(const PairSet& pairs) const {
  std::vector<Interval> runs;
  for (const auto& [d, rows] : pairs.by_diagonal()) {
    const IntervalSet moved = minkowski(delta_unclipped(0, d), rows);
    runs.insert(runs.end(), moved.runs().begin(), moved.runs().end());
  }
  return IntervalSet::from_runs(std::move(runs));
}

IndexSet DeltaBuilder::delta_union(const PairSet& pairs) const {
  return IndexSet(n_, union_unclipped(pairs));
}

IndexSet delta_set(const DiagSet& nd, Index i, Index j, int k) {
  return DeltaBuilder(nd, k).delta(i, j);
}

IndexSet delta_union(const DiagSet& nd, const PairSet& pairs, int k) {
  return DeltaBuilder(nd, k).delta_union(pairs);
}

Partition default_partition(const DiagSet& nd, int k, Index block) {
  if (block < 1)
    throw Error(Errc::invalid_argument, "default_partition: block must be >= 1");
  const Index n = nd.n();
  const DiagSet u = u_set(nd, k);
  Partition out;
  for (Index lo = 1; lo <= n; lo += block) {
    const Index hi = std::min(n, lo + block - 1);
    if (lo == 1 && hi == n) {
      PairSet whole(n);
      for (const auto& run : u.runs())
        for (Index d = run.lo; d <= run.hi; ++d)
          whole.insert_rows(d, IntervalSet::range(1, n));
      if (!whole.empty()) out.push_back(std::move(whole));
      break;
    }
    for (const auto& run : u.runs()) {
      PairSet t = PairSet::tile(n, {lo, hi}, run);
      if (!t.empty()) out.push_back(std::move(t));
    }
  }
  return out;
}

void validate_partition(const Partition& partition, const DiagSet& required) {
  const Index n = required.n();
  std::map<Index, IntervalSet> covered;
  for (std::size_t t = 0; t < partition.size(); ++t) {
    if (partition[t].n() != n)
      throw Error(Errc::invalid_partition,
                  "tile " + std::to_string(t) + ": dimension mismatch");
    for (const auto& [d, rows] : partition[t].by_diagonal()) {
      auto& acc = covered[d];
      if (!intersect(acc, rows).empty())
        throw Error(Errc::invalid_partition,
                    "tile " + std::to_string(t) + " overlaps an earlier tile on diagonal " +
                        std::to_string(d));
      acc = unite(acc, rows);
    }
  }
  for (const auto& run : required.runs()) {
    for (Index d = run.lo; d <= run.hi; ++d) {
      IntervalSet valid = IntervalSet::range(std::max<Index>(1, 1 - d),
                                             std::min<Index>(n, n - d));
      auto it = covered.find(d);
      if (it == covered.end() || !valid.subset_of(it->second))
        throw Error(Errc::invalid_partition,
                    "partition does not cover diagonal " + std::to_string(d));
    }
  }
}

}  // namespace diagfun
