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
#include <vector>

#include "diagfun/approx.hpp"

namespace diagfun {

/// (G, B) with ∇(A) = A − Z A Zᵀ = G Bᵀ.
struct GeneratorPair {
  Dense g;
  Dense b;

  Index n() const { return g.rows(); }
  Index width() const { return g.cols(); }
};

/// A − Z A Zᵀ.
Dense displacement(const Dense& a);

/// T x through a circulant embedding of power-of-two size >= 2n.
Vector toeplitz_matvec(const ToeplitzMatrix& t, const Vector& x);

/// Generator of T itself: G = [e1, c − c0 e1], B = [r, e1].
GeneratorPair toeplitz_generator(const ToeplitzMatrix& t);

/// Rank-revealing compression: QR of G and B, SVD of the small core,
/// singular values below tol·σ_max dropped.
GeneratorPair compress(const GeneratorPair& gb, double tol = 1e-12);

/// Generators for T, T², ..., T^k from the update
///   G_{s+1} = [P_G^s G, ..., G, −P_G e1, ..., −P_G^s e1]
///   B_{s+1} = [B, P_B B, ..., P_B^s B, P_B^s e1, ..., P_B e1]
/// with P_G = (Z−I) T (Z−I)^{-1} and P_B the same with Tᵀ.
/// Raw widths are 3s − 1; with compress_tol > 0 each is compressed.
std::vector<GeneratorPair> power_generators(const ToeplitzMatrix& t, int k,
                                            double compress_tol = 1e-12);

/// Generator of p(T) = Σ c_s T^s, compressed when compress_tol > 0.
GeneratorPair poly_generator(const ToeplitzMatrix& t, const std::vector<double>& coeffs,
                             double compress_tol = 1e-12);

/// Dense A from its generator by A(p,q) = ∇(p,q) + A(p−1,q−1).
Dense reconstruct(const GeneratorPair& gb);

/// A x = Σ_j L(g_j) U(b_j) x using FFT Toeplitz products.
Vector generator_matvec(const GeneratorPair& gb, const Vector& x);

/// Maximal runs of numerically zero ∇ entries on each diagonal of u.
struct ZeroRunPartition {
  struct Run {
    Index head;    // row of the anchor (i_s); the run covers rows head..head+length-1
    Index length;  // m_s + 1
  };
  std::map<Index, std::vector<Run>> runs;  // diagonal r -> runs
  PairSet nonzeros;                        // P_∇ restricted to u
  double scale = 0.0;                      // max |GBᵀ| over u
  double threshold = 0.0;

  Index run_count() const;
};

/// Entries with |[GBᵀ]_ij| <= rel_tol · scale count as zero; only the
/// diagonals of u are evaluated.
ZeroRunPartition zero_runs(const GeneratorPair& gb, const DiagSet& u, double rel_tol = 1e-13);

struct ToeplitzOptions {
  /// Largest Δ set solved densely before giving up.
  Index max_delta = 4000;
  double zero_tol = 1e-13;
  ExecPolicy exec{};
};

struct ToeplitzApprox {
  DiagMatrix value;
  ApproxReport report;
  Index delta_nabla = 0;  // #Δ_{P∇}
  Index delta_zero = 0;   // #Δ_0
  Index generator_width = 0;
  Index nonzero_entries = 0;
  Index zero_runs = 0;
};

/// f(T) from the corner submatrices of the displacement. Bound 4·L·Q·proxy with L = #U_k.
ToeplitzApprox toeplitz_funm(const ToeplitzMatrix& t, const ScalarFunction& f, int k,
                             const ToeplitzOptions& opt = {});

}  // namespace diagfun
