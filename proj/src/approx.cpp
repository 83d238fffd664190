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

#include "diagfun/approx.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "diagfun/error.hpp"

namespace diagfun {

void ApproxReport::record_submatrix(Index size) {
  ++solves;
  max_submatrix = std::max(max_submatrix, size);
  total_submatrix += size;
}

ApproxReport base_report(const DiagMatrix& a, const ScalarFunction& f, int k) {
  if (k < 0) throw Error(Errc::invalid_argument, "k must be >= 0");
  ApproxReport rep;
  rep.k = k;
  rep.hermitian = is_hermitian(a);
  rep.q = crouzeix_q(rep.hermitian);
  if (!kernel_available(f, rep.hermitian))
    throw Error(Errc::unsupported_kernel,
                "no dense kernel for " + f.name() + " on a non-symmetric matrix");
  rep.enclosure = enclosure(a);
  rep.proxy = approximation_error(f, rep.enclosure, k);
  return rep;
}

ElementApprox element_approx(const DiagMatrix& a, const ScalarFunction& f, Index i, Index j,
                             int k) {
  ElementApprox out;
  out.report = base_report(a, f, k);
  const IndexSet delta = delta_set(nd(a), i, j, k);
  out.submatrix = delta.size();
  if (!delta.contains(i) || !delta.contains(j)) {
    out.structural_zero = true;
    out.report.bound = out.report.q * out.report.proxy;
    return out;
  }
  const Dense fb = apply(extract(a, delta, delta), f, out.report.hermitian);
  out.report.record_submatrix(delta.size());
  out.value = fb(delta.order(i) - 1, delta.order(j) - 1);
  out.report.bound = 2 * out.report.q * out.report.proxy;
  return out;
}

TraceApprox trace_approx(const DiagMatrix& a, const ScalarFunction& f, int k,
                         const ExecPolicy& exec) {
  TraceApprox out;
  out.report = base_report(a, f, k);
  const Index n = a.n();
  const DeltaBuilder builder(nd(a), k);
  const IntervalSet base = builder.delta_unclipped(1, 1);
  out.delta11 = base.size();

  std::vector<double> part(static_cast<std::size_t>(n));
  std::vector<Index> sizes(static_cast<std::size_t>(n));
  const bool herm = out.report.hermitian;
  for_each_task(exec, n, [&](Index t) {
    const Index i = t + 1;
    const IndexSet delta(n, base.shifted(i - 1));
    const Dense fb = apply(extract(a, delta, delta), f, herm);
    const Index o = delta.order(i) - 1;
    part[static_cast<std::size_t>(t)] = fb(o, o);
    sizes[static_cast<std::size_t>(t)] = delta.size();
  });
  // fixed summation order keeps the result independent of the thread count
  for (Index t = 0; t < n; ++t) {
    out.value += part[static_cast<std::size_t>(t)];
    out.report.record_submatrix(sizes[static_cast<std::size_t>(t)]);
  }
  out.report.bound = 2.0 * static_cast<double>(n) * out.report.q * out.report.proxy;
  return out;
}

DiagApprox diag_approx(const DiagMatrix& a, const ScalarFunction& f, int k, Index batch,
                       const ExecPolicy& exec) {
  if (batch < 1) throw Error(Errc::invalid_argument, "diag_approx: batch must be >= 1");
  DiagApprox out;
  out.report = base_report(a, f, k);
  const Index n = a.n();
  const DeltaBuilder builder(nd(a), k);
  const IntervalSet base = builder.delta_unclipped(0, 0);
  const Index runs = (n + batch - 1) / batch;

  out.values = Vector::Zero(n);
  std::vector<Index> sizes(static_cast<std::size_t>(runs));
  const bool herm = out.report.hermitian;
  for_each_task(exec, runs, [&](Index r) {
    const Index lo = r * batch + 1;
    const Index hi = std::min(n, lo + batch - 1);
    const IndexSet delta(n, minkowski(base, IntervalSet::range(lo, hi)));
    const Dense fb = apply(extract(a, delta, delta), f, herm);
    for (Index i = lo; i <= hi; ++i) {
      const Index o = delta.order(i) - 1;
      out.values(i - 1) = fb(o, o);
    }
    sizes[static_cast<std::size_t>(r)] = delta.size();
  });
  for (Index s : sizes) out.report.record_submatrix(s);
  out.report.bound = 2 * out.report.q * out.report.proxy;
  return out;
}

FunmApprox funm_approx(const DiagMatrix& a, const ScalarFunction& f, int k,
                       const Partition& partition, const ExecPolicy& exec) {
  FunmApprox out;
  out.report = base_report(a, f, k);
  const Index n = a.n();
  const DiagSet pattern = nd(a);
  const DeltaBuilder builder(pattern, k);
  validate_partition(partition, builder.u());

  // δ_{0,d} per diagonal, shared by all tiles through the shift law
  std::map<Index, IntervalSet> bases;
  // output diagonals are created up front so tasks only write values
  std::map<Index, Vector*> targets;
  out.value = DiagMatrix(n);
  for (const auto& tile : partition)
    for (const auto& [d, rows] : tile.by_diagonal()) {
      if (bases.find(d) == bases.end()) {
        bases.emplace(d, builder.delta_unclipped(0, d));
        targets.emplace(d, &out.value.diagonal(d));
      }
    }

  std::vector<Index> sizes(partition.size());
  const bool herm = out.report.hermitian;
  for_each_task(exec, static_cast<Index>(partition.size()), [&](Index t) {
    const PairSet& tile = partition[static_cast<std::size_t>(t)];
    std::vector<Interval> runs;
    for (const auto& [d, rows] : tile.by_diagonal()) {
      const IntervalSet moved = minkowski(bases.at(d), rows);
      runs.insert(runs.end(), moved.runs().begin(), moved.runs().end());
    }
    const IndexSet delta(n, IntervalSet::from_runs(std::move(runs)));
    sizes[static_cast<std::size_t>(t)] = delta.size();
    if (delta.empty()) return;
    const Dense fb = apply(extract(a, delta, delta), f, herm);
    for (const auto& [d, rows] : tile.by_diagonal()) {
      Vector& target = *targets.at(d);
      for (const auto& run : rows.runs())
        for (Index i = run.lo; i <= run.hi; ++i) {
          const Index oi = delta.order_or_zero(i);
          const Index oj = delta.order_or_zero(i + d);
          if (oi && oj) target(std::min(i, i + d) - 1) = fb(oi - 1, oj - 1);
        }
    }
  });
  for (Index s : sizes) out.report.record_submatrix(s);
  const double tiles = static_cast<double>(partition.size());
  out.report.bound = out.report.q * (tiles + 1) * out.report.proxy;
  return out;
}

FunmApprox funm_approx(const DiagMatrix& a, const ScalarFunction& f, int k, Index block,
                       const ExecPolicy& exec) {
  return funm_approx(a, f, k, default_partition(nd(a), k, block), exec);
}

double decay_bound(double norm2, double tau, int k, const ScalarFunction& f) {
  if (!(tau > 1.0)) throw Error(Errc::invalid_argument, "decay_bound: tau must be > 1");
  if (norm2 < 0) throw Error(Errc::invalid_argument, "decay_bound: norm must be >= 0");
  double m = 0.0;
  for (int s = 0; s < 256; ++s) {
    const double th = 2 * std::numbers::pi * s / 256;
    m = std::max(m, std::abs(f(std::polar(norm2 * tau, th))));
  }
  return 2 * tau / (tau - 1) * std::pow(tau, -k) * m;
}

std::optional<int> choose_k(const ScalarFunction& f, const SpectralEnclosure& enc, double tol,
                            double factor, int kmax) {
  if (!(tol > 0)) throw Error(Errc::invalid_argument, "choose_k: tol must be > 0");
  for (int k = 0; k <= kmax; ++k)
    if (factor * approximation_error(f, enc, k) <= tol) return k;
  return std::nullopt;
}

}  // namespace diagfun
