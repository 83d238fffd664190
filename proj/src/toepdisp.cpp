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

#include "diagfun/toepdisp.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>

#include "diagfun/error.hpp"

namespace diagfun {

namespace {

using CVector = Eigen::VectorXcd;

Index next_pow2(Index x) {
  Index p = 1;
  while (p < x) p <<= 1;
  return p;
}

// (Z − I)^{-1} x is minus the running sum of x
Vector zi_inv(const Vector& x) {
  Vector w(x.size());
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    acc -= x(i);
    w(i) = acc;
  }
  return w;
}

// ((Z − I) w)_i = w_{i−1} − w_i
Vector zmi(const Vector& w) {
  Vector y(w.size());
  for (Index i = 0; i < w.size(); ++i) y(i) = (i ? w(i - 1) : 0.0) - w(i);
  return y;
}

Dense apply_p(const ToeplitzMatrix& t, const Dense& x) {
  Dense y(x.rows(), x.cols());
  for (Index c = 0; c < x.cols(); ++c) y.col(c) = zmi(toeplitz_matvec(t, zi_inv(x.col(c))));
  return y;
}

Vector unit(Index n) {
  Vector e = Vector::Zero(n);
  e(0) = 1.0;
  return e;
}

}  // namespace

Dense displacement(const Dense& a) {
  if (a.rows() != a.cols())
    throw Error(Errc::dimension_mismatch, "displacement: matrix is not square");
  Dense d = a;
  const Index n = a.rows();
  if (n > 1) d.bottomRightCorner(n - 1, n - 1) -= a.topLeftCorner(n - 1, n - 1);
  return d;
}

Vector toeplitz_matvec(const ToeplitzMatrix& t, const Vector& x) {
  const Index n = t.n();
  if (x.size() != n) throw Error(Errc::dimension_mismatch, "toeplitz_matvec: length mismatch");
  const Index big = next_pow2(2 * n);
  CVector v = CVector::Zero(big), xp = CVector::Zero(big);
  for (Index i = 0; i < n; ++i) {
    v(i) = t.col()(i);
    xp(i) = x(i);
  }
  for (Index j = 1; j < n; ++j) v(big - j) = t.row()(j);
  Eigen::FFT<double> fft;
  CVector fv(big), fx(big), y(big);
  fft.fwd(fv, v);
  fft.fwd(fx, xp);
  CVector prod = fv.cwiseProduct(fx);
  fft.inv(y, prod);
  return y.head(n).real();
}

GeneratorPair toeplitz_generator(const ToeplitzMatrix& t) {
  const Index n = t.n();
  GeneratorPair gb{Dense::Zero(n, 2), Dense::Zero(n, 2)};
  gb.g(0, 0) = 1.0;
  gb.g.col(1) = t.col();
  gb.g(0, 1) = 0.0;
  gb.b.col(0) = t.row();
  gb.b(0, 1) = 1.0;
  return gb;
}

GeneratorPair compress(const GeneratorPair& gb, double tol) {
  const Index n = gb.n();
  const Index w = gb.width();
  if (w == 0) return gb;
  const Index m = std::min(n, w);
  Eigen::HouseholderQR<Dense> qg(gb.g), qb(gb.b);
  const Dense q_g = qg.householderQ() * Dense::Identity(n, m);
  const Dense q_b = qb.householderQ() * Dense::Identity(n, m);
  const Dense r_g = qg.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  const Dense r_b = qb.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Dense> svd(r_g * r_b.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol * s(0)) ++rank;
  GeneratorPair out;
  out.g = q_g * svd.matrixU().leftCols(rank) * s.head(rank).asDiagonal();
  out.b = q_b * svd.matrixV().leftCols(rank);
  return out;
}

std::vector<GeneratorPair> power_generators(const ToeplitzMatrix& t, int k, double compress_tol) {
  if (k < 1) throw Error(Errc::invalid_argument, "power_generators: k must be >= 1");
  const Index n = t.n();
  const ToeplitzMatrix tt = t.transposed();
  const GeneratorPair base = toeplitz_generator(t);

  // v[j] = P_G^j G, u[j] = P_B^j B, w[j] = P_G^j e1, y[j] = P_B^j e1
  std::vector<Dense> v{base.g}, u{base.b};
  std::vector<Vector> w{unit(n)}, y{unit(n)};
  for (int j = 1; j < k; ++j) {
    v.push_back(apply_p(t, v.back()));
    u.push_back(apply_p(tt, u.back()));
    w.push_back(apply_p(t, w.back()));
    y.push_back(apply_p(tt, y.back()));
  }

  std::vector<GeneratorPair> out;
  for (int s = 1; s <= k; ++s) {
    GeneratorPair gs{Dense(n, 3 * s - 1), Dense(n, 3 * s - 1)};
    Index col = 0;
    for (int j = 0; j < s; ++j, col += 2) {
      gs.g.middleCols(col, 2) = v[static_cast<std::size_t>(s - 1 - j)];
      gs.b.middleCols(col, 2) = u[static_cast<std::size_t>(j)];
    }
    for (int j = 1; j < s; ++j, ++col) {
      gs.g.col(col) = -w[static_cast<std::size_t>(j)];
      gs.b.col(col) = y[static_cast<std::size_t>(s - j)];
    }
    out.push_back(compress_tol > 0 ? compress(gs, compress_tol) : std::move(gs));
  }
  return out;
}

GeneratorPair poly_generator(const ToeplitzMatrix& t, const std::vector<double>& coeffs,
                             double compress_tol) {
  if (coeffs.empty()) throw Error(Errc::invalid_argument, "poly_generator: no coefficients");
  const Index n = t.n();
  const int k = static_cast<int>(coeffs.size()) - 1;
  std::vector<GeneratorPair> powers;
  if (k >= 1) powers = power_generators(t, k, 0.0);
  Index width = 1;
  for (const auto& p : powers) width += p.width();
  GeneratorPair out{Dense(n, width), Dense(n, width)};
  out.g.col(0) = coeffs[0] * unit(n);
  out.b.col(0) = unit(n);
  Index col = 1;
  for (int s = 1; s <= k; ++s) {
    const auto& p = powers[static_cast<std::size_t>(s - 1)];
    out.g.middleCols(col, p.width()) = coeffs[static_cast<std::size_t>(s)] * p.g;
    out.b.middleCols(col, p.width()) = p.b;
    col += p.width();
  }
  return compress_tol > 0 ? compress(out, compress_tol) : out;
}

Dense reconstruct(const GeneratorPair& gb) {
  const Index n = gb.n();
  Dense a = gb.width() ? Dense(gb.g * gb.b.transpose()) : Dense::Zero(n, n);
  for (Index q = 1; q < n; ++q)
    for (Index p = 1; p < n; ++p) a(p, q) += a(p - 1, q - 1);
  return a;
}

Vector generator_matvec(const GeneratorPair& gb, const Vector& x) {
  const Index n = gb.n();
  Vector y = Vector::Zero(n);
  Vector first = Vector::Zero(n);
  for (Index j = 0; j < gb.width(); ++j) {
    first(0) = gb.b(0, j);
    const ToeplitzMatrix up(first, gb.b.col(j));
    first(0) = gb.g(0, j);
    const ToeplitzMatrix low(gb.g.col(j), first);
    first(0) = 0.0;
    y += toeplitz_matvec(low, toeplitz_matvec(up, x));
  }
  return y;
}

Index ZeroRunPartition::run_count() const {
  Index c = 0;
  for (const auto& [r, v] : runs) c += static_cast<Index>(v.size());
  return c;
}

ZeroRunPartition zero_runs(const GeneratorPair& gb, const DiagSet& u, double rel_tol) {
  const Index n = gb.n();
  ZeroRunPartition out;
  out.nonzeros = PairSet(n);
  std::map<Index, Vector> vals;
  for (const auto& run : u.runs())
    for (Index r = run.lo; r <= run.hi; ++r) {
      const Index lo = std::max<Index>(1, 1 - r);
      const Index hi = std::min<Index>(n, n - r);
      Vector v(hi - lo + 1);
      for (Index i = lo; i <= hi; ++i)
        v(i - lo) = gb.width() ? gb.g.row(i - 1).dot(gb.b.row(i + r - 1)) : 0.0;
      if (v.size()) out.scale = std::max(out.scale, v.cwiseAbs().maxCoeff());
      vals.emplace(r, std::move(v));
    }
  out.threshold = rel_tol * out.scale;
  for (const auto& [r, v] : vals) {
    const Index lo = std::max<Index>(1, 1 - r);
    auto& list = out.runs[r];
    Index t = 0;
    while (t < v.size()) {
      const bool zero = std::abs(v(t)) <= out.threshold;
      Index e = t;
      while (e + 1 < v.size() && (std::abs(v(e + 1)) <= out.threshold) == zero) ++e;
      if (zero) list.push_back({lo + t, e - t + 1});
      else out.nonzeros.insert_rows(r, IntervalSet::range(lo + t, lo + e));
      t = e + 1;
    }
  }
  return out;
}

namespace {

std::vector<double> structure_poly(const ScalarFunction& f, const SpectralEnclosure& enc, int k) {
  if (f.kind() == FunKind::polynomial && f.degree() <= k) {
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    double pw = 1.0;
    for (std::size_t s = 0; s < f.coeffs().size() && s < c.size(); ++s, pw *= f.scale())
      c[s] = f.coeffs()[s] * pw;
    return c;
  }
  double lo = enc.lo, hi = enc.hi;
  if (enc.kind == SpectralEnclosure::Kind::disk) lo = -enc.radius, hi = enc.radius;
  if (lo < hi && f.defined_on(lo, hi)) return cheb_approx(f, lo, hi, k).monomial;
  // any degree-k polynomial with nonzero coefficients carries the structure
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  double fact = 1.0;
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (s) fact *= static_cast<double>(s);
    c[s] = 1.0 / fact;
  }
  return c;
}

}  // namespace

ToeplitzApprox toeplitz_funm(const ToeplitzMatrix& t, const ScalarFunction& f, int k,
                             const ToeplitzOptions& opt) {
  const Index n = t.n();
  const DiagMatrix a = t.to_diag();
  ToeplitzApprox out;
  out.report = base_report(a, f, k);
  const DeltaBuilder builder(nd(t), k);
  const DiagSet& u = builder.u();

  GeneratorPair gb = poly_generator(t, structure_poly(f, out.report.enclosure, k));
  out.generator_width = gb.width();
  const ZeroRunPartition zr = zero_runs(gb, u, opt.zero_tol);
  out.nonzero_entries = zr.nonzeros.size();
  out.zero_runs = zr.run_count();

  PairSet anchors(n);
  for (const auto& [r, list] : zr.runs)
    for (const auto& run : list) anchors.insert(run.head, run.head + r);

  const IndexSet d_nabla = builder.delta_union(zr.nonzeros);
  const IndexSet d_zero = builder.delta_union(anchors);
  out.delta_nabla = d_nabla.size();
  out.delta_zero = d_zero.size();
  for (Index size : {out.delta_nabla, out.delta_zero})
    if (size > opt.max_delta)
      throw Error(Errc::dense_fallback_advised,
                  "toeplitz_funm: submatrix of size " + std::to_string(size) +
                      " exceeds the cap " + std::to_string(opt.max_delta) +
                      "; a dense solve is advised");

  const IndexSet* sets[2] = {&d_nabla, &d_zero};
  Dense fs[2];
  const bool herm = out.report.hermitian;
  for_each_task(opt.exec, 2, [&](Index s) {
    const IndexSet& d = *sets[s];
    if (!d.empty()) fs[s] = apply(extract(t, d, d), f, herm);
  });
  for (const IndexSet* d : sets)
    if (!d->empty()) out.report.record_submatrix(d->size());

  out.value = DiagMatrix(n);
  for (const auto& run : u.runs())
    for (Index r = run.lo; r <= run.hi; ++r) out.value.diagonal(r);
  for (const auto& [r, rows] : zr.nonzeros.by_diagonal()) {
    Vector& target = out.value.diagonal(r);
    for (const auto& run : rows.runs())
      for (Index i = run.lo; i <= run.hi; ++i) {
        const Index oi = d_nabla.order_or_zero(i), oj = d_nabla.order_or_zero(i + r);
        if (oi && oj) target(std::min(i, i + r) - 1) = fs[0](oi - 1, oj - 1);
      }
  }
  for (const auto& [r, list] : zr.runs) {
    Vector& target = out.value.diagonal(r);
    for (const auto& run : list) {
      const double v = fs[1](d_zero.order(run.head) - 1, d_zero.order(run.head + r) - 1);
      for (Index i = run.head; i < run.head + run.length; ++i) target(std::min(i, i + r) - 1) = v;
    }
  }
  out.report.bound = 4.0 * static_cast<double>(u.size()) * out.report.q * out.report.proxy;
  return out;
}

}  // namespace diagfun
