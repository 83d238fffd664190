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

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <map>

#include "diagfun/diagsets.hpp"

namespace diagfun {

using Dense = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Square matrix stored by diagonal: r -> vector of length n - |r|.
///
/// Entry (i, j), 1-based, lives on diagonal r = j - i at offset min(i, j) - 1.
/// Stored zeros are kept; nd() decides what counts as structurally nonzero.
class DiagMatrix {
 public:
  DiagMatrix() = default;
  explicit DiagMatrix(Index n);

  static DiagMatrix from_dense(const Dense& a, double tol = 0.0);
  static DiagMatrix identity(Index n);

  Index n() const { return n_; }

  void set_diagonal(Index r, Vector values);
  /// Zero-filled diagonal r, created on first use.
  Vector& diagonal(Index r);
  const Vector* find_diagonal(Index r) const;
  const std::map<Index, Vector>& diagonals() const { return diags_; }

  double operator()(Index i, Index j) const;
  void set(Index i, Index j, double v);
  void add(Index i, Index j, double v);

  /// Stored diagonal indices, regardless of values.
  DiagSet stored() const;
  bool is_symmetric(double tol = 0.0) const;
  Dense to_dense() const;
  double max_abs() const;

 private:
  void check_diagonal(Index r) const;

  Index n_ = 0;
  std::map<Index, Vector> diags_;
};

/// toeplitz(c, r): entry (i, j) = r[j-i] for j >= i, c[i-j] otherwise.
class ToeplitzMatrix {
 public:
  ToeplitzMatrix() = default;
  ToeplitzMatrix(Vector first_col, Vector first_row);

  /// Symmetric Toeplitz with first column c.
  static ToeplitzMatrix symmetric(Vector c);

  Index n() const { return col_.size(); }
  const Vector& col() const { return col_; }
  const Vector& row() const { return row_; }

  /// Value on diagonal r = j - i.
  double coeff(Index r) const { return r >= 0 ? row_(r) : col_(-r); }
  double operator()(Index i, Index j) const { return coeff(j - i); }

  bool is_symmetric() const { return col_ == row_; }
  ToeplitzMatrix transposed() const { return ToeplitzMatrix(row_, col_); }
  Dense to_dense() const;
  DiagMatrix to_diag(double tol = 0.0) const;

 private:
  Vector col_;
  Vector row_;
};

/// Diagonals whose stored max-abs exceeds tol (tol = 0: any nonzero value).
DiagSet nd(const DiagMatrix& a, double tol = 0.0);
DiagSet nd(const ToeplitzMatrix& t, double tol = 0.0);

/// A[rows, cols] as a dense matrix indexed by the order functions.
Dense extract(const DiagMatrix& a, const IndexSet& rows, const IndexSet& cols);
Dense extract(const ToeplitzMatrix& t, const IndexSet& rows, const IndexSet& cols);

DiagMatrix read_matrix_market(std::istream& in);
DiagMatrix read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(std::ostream& out, const DiagMatrix& a);

/// I_n (x) A_n + A_n (x) I_n with A_n = tridiag(-1, 4, -1); size n^2.
DiagMatrix kron_sum_laplacian(Index n);

}  // namespace diagfun
