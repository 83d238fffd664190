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

#include "diagfun/matstore.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "diagfun/error.hpp"

namespace diagfun {

DiagMatrix::DiagMatrix(Index n) : n_(n) {
  if (n < 1) throw Error(Errc::invalid_argument, "DiagMatrix: n must be >= 1");
}

DiagMatrix DiagMatrix::from_dense(const Dense& a, double tol) {
  if (a.rows() != a.cols())
    throw Error(Errc::dimension_mismatch, "from_dense: matrix is not square");
  const Index n = a.rows();
  DiagMatrix out(n);
  for (Index r = -(n - 1); r <= n - 1; ++r) {
    const Index len = n - std::abs(r);
    Vector v(len);
    for (Index t = 0; t < len; ++t)
      v(t) = r >= 0 ? a(t, t + r) : a(t - r, t);
    if (v.cwiseAbs().maxCoeff() > tol) out.diags_.emplace(r, std::move(v));
  }
  return out;
}

DiagMatrix DiagMatrix::identity(Index n) {
  DiagMatrix out(n);
  out.set_diagonal(0, Vector::Ones(n));
  return out;
}

void DiagMatrix::check_diagonal(Index r) const {
  if (r < -(n_ - 1) || r > n_ - 1)
    throw Error(Errc::out_of_range,
                "diagonal " + std::to_string(r) + " outside matrix of order " +
                    std::to_string(n_));
}

void DiagMatrix::set_diagonal(Index r, Vector values) {
  check_diagonal(r);
  if (values.size() != n_ - std::abs(r))
    throw Error(Errc::dimension_mismatch,
                "set_diagonal: diagonal " + std::to_string(r) + " needs length " +
                    std::to_string(n_ - std::abs(r)));
  diags_[r] = std::move(values);
}

Vector& DiagMatrix::diagonal(Index r) {
  check_diagonal(r);
  auto [it, inserted] = diags_.try_emplace(r);
  if (inserted) it->second = Vector::Zero(n_ - std::abs(r));
  return it->second;
}

const Vector* DiagMatrix::find_diagonal(Index r) const {
  auto it = diags_.find(r);
  return it == diags_.end() ? nullptr : &it->second;
}

double DiagMatrix::operator()(Index i, Index j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw Error(Errc::out_of_range, "DiagMatrix: index out of range");
  const Vector* d = find_diagonal(j - i);
  return d ? (*d)(std::min(i, j) - 1) : 0.0;
}

void DiagMatrix::set(Index i, Index j, double v) {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw Error(Errc::out_of_range, "DiagMatrix: index out of range");
  diagonal(j - i)(std::min(i, j) - 1) = v;
}

void DiagMatrix::add(Index i, Index j, double v) {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw Error(Errc::out_of_range, "DiagMatrix: index out of range");
  diagonal(j - i)(std::min(i, j) - 1) += v;
}

DiagSet DiagMatrix::stored() const {
  std::vector<Index> keys;
  keys.reserve(diags_.size());
  for (const auto& [r, v] : diags_) keys.push_back(r);
  return DiagSet(n_, IntervalSet::from_values(keys));
}

bool DiagMatrix::is_symmetric(double tol) const {
  for (const auto& [r, v] : diags_) {
    if (r <= 0) continue;
    const Vector* mirror = find_diagonal(-r);
    const double diff = mirror ? (v - *mirror).cwiseAbs().maxCoeff()
                               : v.cwiseAbs().maxCoeff();
    if (diff > tol) return false;
  }
  for (const auto& [r, v] : diags_) {
    if (r < 0 && !find_diagonal(-r) && v.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

Dense DiagMatrix::to_dense() const {
  Dense out = Dense::Zero(n_, n_);
  for (const auto& [r, v] : diags_)
    for (Index t = 0; t < v.size(); ++t) {
      if (r >= 0) out(t, t + r) = v(t);
      else out(t - r, t) = v(t);
    }
  return out;
}

double DiagMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& [r, v] : diags_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

ToeplitzMatrix::ToeplitzMatrix(Vector first_col, Vector first_row)
    : col_(std::move(first_col)), row_(std::move(first_row)) {
  if (col_.size() != row_.size() || col_.size() == 0)
    throw Error(Errc::dimension_mismatch, "toeplitz: column/row length mismatch");
  if (col_(0) != row_(0))
    throw Error(Errc::invalid_argument, "toeplitz: c[0] must equal r[0]");
}

ToeplitzMatrix ToeplitzMatrix::symmetric(Vector c) {
  Vector r = c;
  return ToeplitzMatrix(std::move(c), std::move(r));
}

Dense ToeplitzMatrix::to_dense() const {
  const Index n = this->n();
  Dense out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out(i, j) = coeff(j - i);
  return out;
}

DiagMatrix ToeplitzMatrix::to_diag(double tol) const {
  const Index n = this->n();
  DiagMatrix out(n);
  for (Index r = -(n - 1); r <= n - 1; ++r) {
    const double v = coeff(r);
    if (std::abs(v) > tol) out.set_diagonal(r, Vector::Constant(n - std::abs(r), v));
  }
  return out;
}

DiagSet nd(const DiagMatrix& a, double tol) {
  if (tol < 0) throw Error(Errc::invalid_argument, "nd: tol must be >= 0");
  std::vector<Index> keys;
  for (const auto& [r, v] : a.diagonals())
    if (v.size() > 0 && v.cwiseAbs().maxCoeff() > tol) keys.push_back(r);
  return DiagSet(a.n(), IntervalSet::from_values(keys));
}

DiagSet nd(const ToeplitzMatrix& t, double tol) {
  if (tol < 0) throw Error(Errc::invalid_argument, "nd: tol must be >= 0");
  const Index n = t.n();
  std::vector<Interval> runs;
  for (Index r = -(n - 1); r <= n - 1; ++r)
    if (std::abs(t.coeff(r)) > tol) runs.push_back({r, r});
  return DiagSet(n, IntervalSet::from_runs(std::move(runs)));
}

namespace {

void check_within(const IndexSet& s, Index n, const char* what) {
  if (s.n() != n)
    throw Error(Errc::dimension_mismatch, std::string("extract: ") + what +
                                              " index set has wrong ambient size");
}

}  // namespace

Dense extract(const DiagMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  check_within(rows, a.n(), "row");
  check_within(cols, a.n(), "column");
  Dense out = Dense::Zero(rows.size(), cols.size());
  for (const auto& [r, v] : a.diagonals()) {
    // rows i with i + r a column member
    IntervalSet hits = intersect(rows.set(), cols.set().shifted(-r));
    for (const auto& run : hits.runs())
      for (Index i = run.lo; i <= run.hi; ++i)
        out(rows.order(i) - 1, cols.order(i + r) - 1) = v(std::min(i, i + r) - 1);
  }
  return out;
}

Dense extract(const ToeplitzMatrix& t, const IndexSet& rows, const IndexSet& cols) {
  check_within(rows, t.n(), "row");
  check_within(cols, t.n(), "column");
  const auto ri = rows.values();
  const auto ci = cols.values();
  Dense out(static_cast<Index>(ri.size()), static_cast<Index>(ci.size()));
  for (std::size_t q = 0; q < ci.size(); ++q)
    for (std::size_t p = 0; p < ri.size(); ++p)
      out(static_cast<Index>(p), static_cast<Index>(q)) = t.coeff(ci[q] - ri[p]);
  return out;
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

DiagMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::mm_bad_header, "empty Matrix Market stream");

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix")
    throw Error(Errc::mm_bad_header, "missing %%MatrixMarket matrix banner");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate")
    throw Error(Errc::mm_bad_header, "only coordinate format is supported, got '" +
                                         format + "'");
  if (field != "real" && field != "integer" && field != "double")
    throw Error(Errc::mm_bad_header, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
    throw Error(Errc::mm_bad_header, "unsupported symmetry '" + symmetry + "'");

  do {
    if (!std::getline(in, line))
      throw Error(Errc::mm_bad_header, "missing size line");
  } while (line.empty() || line[0] == '%' ||
           line.find_first_not_of(" \t\r") == std::string::npos);

  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream size(line);
    if (!(size >> rows >> cols >> nnz) || rows < 1 || cols < 1 || nnz < 0)
      throw Error(Errc::mm_bad_header, "malformed size line '" + line + "'");
  }
  if (rows != cols)
    throw Error(Errc::mm_not_square, "matrix is " + std::to_string(rows) + "x" +
                                         std::to_string(cols));

  DiagMatrix out(static_cast<Index>(rows));
  long long read = 0;
  while (read < nnz && std::getline(in, line)) {
    if (line.empty() || line[0] == '%' ||
        line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v))
      throw Error(Errc::mm_bad_entry, "malformed entry '" + line + "'");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw Error(Errc::mm_index_out_of_bounds,
                  "entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    out.add(i, j, v);
    if (i != j) {
      if (symmetry == "symmetric") out.add(j, i, v);
      else if (symmetry == "skew-symmetric") out.add(j, i, -v);
    }
    ++read;
  }
  if (read < nnz)
    throw Error(Errc::mm_bad_entry, "expected " + std::to_string(nnz) +
                                        " entries, found " + std::to_string(read));
  return out;
}

DiagMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const DiagMatrix& a) {
  Index nnz = 0;
  for (const auto& [r, v] : a.diagonals()) nnz += (v.array() != 0.0).count();
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n() << ' ' << a.n() << ' ' << nnz << '\n';
  out << std::setprecision(17);
  for (const auto& [r, v] : a.diagonals())
    for (Index t = 0; t < v.size(); ++t) {
      if (v(t) == 0.0) continue;
      const Index i = r >= 0 ? t + 1 : t - r + 1;
      out << i << ' ' << i + r << ' ' << v(t) << '\n';
    }
}

DiagMatrix kron_sum_laplacian(Index n) {
  if (n < 1) throw Error(Errc::invalid_argument, "kron_sum_laplacian: n must be >= 1");
  const Index N = n * n;
  DiagMatrix out(N);
  out.set_diagonal(0, Vector::Constant(N, 8.0));
  if (N == 1) return out;
  Vector off(N - 1);
  for (Index t = 0; t < N - 1; ++t) off(t) = ((t + 1) % n == 0) ? 0.0 : -1.0;
  out.set_diagonal(1, off);
  out.set_diagonal(-1, off);
  if (n > 1) {
    out.set_diagonal(n, Vector::Constant(N - n, -1.0));
    out.set_diagonal(-n, Vector::Constant(N - n, -1.0));
  }
  return out;
}

}  // namespace diagfun
