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

#include <map>
#include <utility>
#include <vector>

#include "diagfun/intervals.hpp"

namespace diagfun {

/// Set of diagonal indices r (r = j - i) of an n x n matrix.
///
/// Members always lie in [-(n-1), n-1]; construction clips to that range.
class DiagSet {
 public:
  DiagSet() = default;
  DiagSet(Index n, IntervalSet diagonals);

  static DiagSet banded(Index n, Index lower, Index upper);
  static DiagSet all(Index n) { return banded(n, n - 1, n - 1); }

  Index n() const { return n_; }
  const IntervalSet& set() const { return set_; }
  std::span<const Interval> runs() const { return set_.runs(); }
  bool contains(Index r) const { return set_.contains(r); }
  Index size() const { return set_.size(); }
  bool empty() const { return set_.empty(); }

  friend bool operator==(const DiagSet&, const DiagSet&) = default;

 private:
  Index n_ = 0;
  IntervalSet set_;
};

/// Sorted subset of {1..n} with its order function.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(Index n, const IntervalSet& members);

  static IndexSet range(Index n, Index lo, Index hi) {
    return IndexSet(n, IntervalSet::range(lo, hi));
  }

  Index n() const { return n_; }
  const IntervalSet& set() const { return set_; }
  Index size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(Index j) const { return set_.contains(j); }

  /// 1-based rank of j among the members; throws if j is not a member.
  Index order(Index j) const;
  /// Like order() but returns 0 for non-members.
  Index order_or_zero(Index j) const;

  std::vector<Index> values() const { return set_.values(); }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.n_ == b.n_ && a.set_ == b.set_;
  }

 private:
  Index n_ = 0;
  IntervalSet set_;
  std::vector<Index> before_;  // members preceding each run
  Index size_ = 0;
};

/// Set of matrix positions (i, j), grouped by diagonal d = j - i.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(Index n) : n_(n) {}

  /// Rectangular tile: rows [row_lo, row_hi] x diagonals [diag_lo, diag_hi],
  /// restricted to valid positions.
  static PairSet tile(Index n, Interval rows, Interval diags);

  Index n() const { return n_; }
  void insert(Index i, Index j);
  /// Adds positions (i, i + d) for i in rows (clipped to valid positions).
  void insert_rows(Index d, const IntervalSet& rows);

  bool contains(Index i, Index j) const;
  Index size() const;
  bool empty() const { return by_diag_.empty(); }

  /// Diagonal -> set of row indices.
  const std::map<Index, IntervalSet>& by_diagonal() const { return by_diag_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [d, rows] : by_diag_)
      for (const auto& run : rows.runs())
        for (Index i = run.lo; i <= run.hi; ++i) fn(i, i + d);
  }

 private:
  Index n_ = 0;
  std::map<Index, IntervalSet> by_diag_;
};

using Partition = std::vector<PairSet>;

DiagSet minkowski_sum(const DiagSet& a, const DiagSet& b);

/// S_0..S_k: S_0 = {0}, S_p = S_{p-1} + nd.
std::vector<DiagSet> s_sets(const DiagSet& nd, int k);

/// U_k = S_0 u ... u S_k.
DiagSet u_set(const DiagSet& nd, int k);

/// Precomputed S_l and U_l for one (nd, k); answers delta queries.
///
/// The unclipped delta_ij is kept as an IntervalSet so translation by
/// (z, z) is exact: delta_{i+z, j+z} = delta_{i,j} + z.
class DeltaBuilder {
 public:
  DeltaBuilder(const DiagSet& nd, int k);

  Index n() const { return n_; }
  int k() const { return k_; }
  const std::vector<DiagSet>& s() const { return s_; }
  const DiagSet& u() const { return u_.back(); }

  /// delta_ij^(k) before intersection with {1..n}.
  IntervalSet delta_unclipped(Index i, Index j) const;
  IndexSet delta(Index i, Index j) const;

  IntervalSet union_unclipped(const PairSet& pairs) const;
  IndexSet delta_union(const PairSet& pairs) const;

 private:
  Index n_;
  int k_;
  std::vector<DiagSet> s_;
  std::vector<DiagSet> u_;  // u_[q] = U_q
};

IndexSet delta_set(const DiagSet& nd, Index i, Index j, int k);
IndexSet delta_union(const DiagSet& nd, const PairSet& pairs, int k);

/// Row bands of height `block` crossed with the runs of U_k(nd).
Partition default_partition(const DiagSet& nd, int k, Index block = 64);

/// Throws Errc::invalid_partition unless the tiles are pairwise disjoint and
/// cover every valid position on the diagonals of `required`.
void validate_partition(const Partition& partition, const DiagSet& required);

}  // namespace diagfun
