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

#include <optional>

#include "diagfun/densefun.hpp"
#include "diagfun/diagsets.hpp"
#include "diagfun/matstore.hpp"
#include "diagfun/parallel.hpp"

namespace diagfun {

/// What an engine did and how far its answer can be from f(A).
///
/// `proxy` stands in for min over degree-k polynomials of ‖f − p‖ on W(A)
/// (see approximation_error); `bound` is the engine's multiple of it. For
/// non-Hermitian input the proxy is an estimate, not a certificate.
struct ApproxReport {
  int k = 0;
  bool hermitian = true;
  double q = 1.0;
  Index solves = 0;          // dense kernel calls (L for the partition engine)
  Index max_submatrix = 0;
  Index total_submatrix = 0;
  double proxy = 0.0;
  double bound = 0.0;
  SpectralEnclosure enclosure;

  void record_submatrix(Index size);
};

struct ElementApprox {
  double value = 0.0;
  /// True when i or j falls outside Δ_ij and the entry is approximated by 0.
  bool structural_zero = false;
  Index submatrix = 0;
  ApproxReport report;
};

struct TraceApprox {
  double value = 0.0;
  Index delta11 = 0;  // #δ_11 before clipping to {1..n}
  ApproxReport report;
};

struct DiagApprox {
  Vector values;
  ApproxReport report;
};

struct FunmApprox {
  DiagMatrix value;
  ApproxReport report;
};

/// [f(A)]_ij from f(A[Δ_ij, Δ_ij]); bound 2Q·proxy (Q·proxy for a
/// structural zero).
ElementApprox element_approx(const DiagMatrix& a, const ScalarFunction& f, Index i, Index j,
                             int k);

/// Σ_i [f(A[Δ_ii, Δ_ii])]_ii with Δ_ii from δ_11 by translation;
/// bound 2nQ·proxy.
TraceApprox trace_approx(const DiagMatrix& a, const ScalarFunction& f, int k,
                         const ExecPolicy& exec = {});

/// Diagonal of f(A), one dense solve per run of `batch` consecutive rows.
DiagApprox diag_approx(const DiagMatrix& a, const ScalarFunction& f, int k, Index batch,
                       const ExecPolicy& exec = {});

/// Whole f(A) on a validated partition; bound Q(L+1)·proxy.
FunmApprox funm_approx(const DiagMatrix& a, const ScalarFunction& f, int k,
                       const Partition& partition, const ExecPolicy& exec = {});
/// Whole f(A) on default_partition(ND(a), k, block).
FunmApprox funm_approx(const DiagMatrix& a, const ScalarFunction& f, int k, Index block = 64,
                       const ExecPolicy& exec = {});

/// (2τ/(τ−1)) τ^{−k} max_{|z| = τ·norm2} |f(z)|, sampled at 256 points.
double decay_bound(double norm2, double tau, int k, const ScalarFunction& f);

/// Smallest k <= kmax with factor · approximation_error(f, enc, k) <= tol.
std::optional<int> choose_k(const ScalarFunction& f, const SpectralEnclosure& enc, double tol,
                            double factor, int kmax = 200);

/// Report skeleton shared by every engine: symmetry class, Q, enclosure
/// and proxy for degree k.
ApproxReport base_report(const DiagMatrix& a, const ScalarFunction& f, int k);

}  // namespace diagfun
