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

#include "diagfun/densefun.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "diagfun/error.hpp"

namespace diagfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_square_finite(const Dense& b, const char* who) {
  if (b.rows() != b.cols())
    throw Error(Errc::dimension_mismatch, std::string(who) + ": matrix is not square");
  if (!b.allFinite())
    throw Error(Errc::invalid_argument, std::string(who) + ": non-finite entries");
}

template <typename T>
T horner(const std::vector<double>& c, T x) {
  T acc = T(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + T(*it);
  return acc;
}

std::vector<double> poly_add(std::vector<double> a, const std::vector<double>& b, double sb) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sb * b[i];
  return a;
}

// (alpha x + beta) * p(x)
std::vector<double> poly_mul_linear(const std::vector<double>& p, double alpha, double beta) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += beta * p[i];
    out[i + 1] += alpha * p[i];
  }
  return out;
}

}  // namespace

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
  for (double c : coeffs)
    if (!std::isfinite(c))
      throw Error(Errc::invalid_argument, "polynomial: non-finite coefficient");
  ScalarFunction f(FunKind::polynomial, 1.0);
  f.coeffs_ = std::move(coeffs);
  return f;
}

ScalarFunction ScalarFunction::callback(std::string name, RealFn fn, ComplexFn fc) {
  if (!fn) throw Error(Errc::invalid_argument, "callback: empty function");
  ScalarFunction f(FunKind::callback, 1.0);
  f.name_ = std::move(name);
  f.real_ = std::move(fn);
  f.complex_ = std::move(fc);
  return f;
}

ScalarFunction ScalarFunction::parse(const std::string& spec) {
  std::string tag = spec;
  double scale = 1.0;
  if (auto at = spec.find('@'); at != std::string::npos) {
    tag = spec.substr(0, at);
    try {
      std::size_t used = 0;
      scale = std::stod(spec.substr(at + 1), &used);
      if (used != spec.size() - at - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(Errc::invalid_argument, "bad scale in function spec '" + spec + "'");
    }
  }
  ScalarFunction f(FunKind::exp, scale);
  if (tag == "exp") f.kind_ = FunKind::exp;
  else if (tag == "log") f.kind_ = FunKind::log;
  else if (tag == "sqrt") f.kind_ = FunKind::sqrt;
  else if (tag == "inv") f.kind_ = FunKind::inv;
  else if (tag == "inv-sqrt" || tag == "invsqrt") f.kind_ = FunKind::inv_sqrt;
  else if (tag.rfind("poly:", 0) == 0) {
    std::vector<double> c;
    std::stringstream ss(tag.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        c.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error(Errc::invalid_argument, "bad polynomial coefficient '" + item + "'");
      }
    }
    if (c.empty()) throw Error(Errc::invalid_argument, "empty polynomial");
    f = polynomial(std::move(c));
    f.scale_ = scale;
  } else {
    throw Error(Errc::invalid_argument, "unknown function '" + tag + "'");
  }
  return f;
}

int ScalarFunction::degree() const {
  if (kind_ != FunKind::polynomial) return -1;
  int d = static_cast<int>(coeffs_.size()) - 1;
  while (d > 0 && coeffs_[static_cast<std::size_t>(d)] == 0.0) --d;
  return std::max(d, 0);
}

std::string ScalarFunction::name() const {
  std::string base;
  switch (kind_) {
    case FunKind::exp: base = "exp"; break;
    case FunKind::log: base = "log"; break;
    case FunKind::sqrt: base = "sqrt"; break;
    case FunKind::inv: base = "inv"; break;
    case FunKind::inv_sqrt: base = "inv-sqrt"; break;
    case FunKind::polynomial: {
      std::ostringstream os;
      os << "poly:";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
      base = os.str();
      break;
    }
    case FunKind::callback: return name_;
  }
  if (scale_ != 1.0) {
    std::ostringstream os;
    os << base << '@' << scale_;
    return os.str();
  }
  return base;
}

double ScalarFunction::operator()(double x) const {
  const double y = scale_ * x;
  switch (kind_) {
    case FunKind::exp: return std::exp(y);
    case FunKind::log: return std::log(y);
    case FunKind::sqrt: return std::sqrt(y);
    case FunKind::inv: return 1.0 / y;
    case FunKind::inv_sqrt: return 1.0 / std::sqrt(y);
    case FunKind::polynomial: return horner(coeffs_, y);
    case FunKind::callback: return real_(x);
  }
  return 0.0;
}

std::complex<double> ScalarFunction::operator()(std::complex<double> z) const {
  const std::complex<double> y = scale_ * z;
  switch (kind_) {
    case FunKind::exp: return std::exp(y);
    case FunKind::log: return std::log(y);
    case FunKind::sqrt: return std::sqrt(y);
    case FunKind::inv: return 1.0 / y;
    case FunKind::inv_sqrt: return 1.0 / std::sqrt(y);
    case FunKind::polynomial: return horner(coeffs_, y);
    case FunKind::callback:
      if (!complex_)
        throw Error(Errc::unsupported_kernel,
                    "callback '" + name_ + "' has no complex evaluation");
      return complex_(z);
  }
  return 0.0;
}

bool ScalarFunction::defined_on(double lo, double hi) const {
  const double a = std::min(scale_ * lo, scale_ * hi);
  const double b = std::max(scale_ * lo, scale_ * hi);
  switch (kind_) {
    case FunKind::log:
    case FunKind::inv_sqrt: return a > 0.0;
    case FunKind::sqrt: return a >= 0.0;
    case FunKind::inv: return a > 0.0 || b < 0.0;
    case FunKind::callback: return std::isfinite((*this)(lo)) && std::isfinite((*this)(hi));
    default: return true;
  }
}

bool SpectralEnclosure::contains(double x) const {
  if (kind == Kind::interval) return x >= lo && x <= hi;
  return std::abs(x) <= radius;
}

Dense expm(const Dense& b) {
  require_square_finite(b, "expm");
  if (b.rows() == 0) return b;
  return b.exp();
}

Dense funm_hermitian(const Dense& b, const ScalarFunction& f) {
  require_square_finite(b, "funm_hermitian");
  if (b.rows() == 0) return b;
  const double fro = b.norm();
  if ((b - b.transpose()).norm() > 1e-12 * fro)
    throw Error(Errc::non_hermitian, "funm_hermitian: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Dense> es(0.5 * (b + b.transpose()));
  if (es.info() != Eigen::Success)
    throw Error(Errc::ill_conditioned, "funm_hermitian: eigensolver failed");
  Vector d = es.eigenvalues();
  const double lam_scale = std::max(std::abs(d(0)), std::abs(d(d.size() - 1)));
  for (Index i = 0; i < d.size(); ++i) {
    double lam = d(i);
    // round-off below zero on a positive semidefinite matrix
    if (f.kind() == FunKind::sqrt && lam < 0 && lam > -1e-14 * lam_scale) lam = 0.0;
    const double v = f(lam);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "funm_hermitian: " << f.name() << " undefined at eigenvalue " << lam;
      throw Error(Errc::domain_error, os.str());
    }
    d(i) = v;
  }
  const Dense& v = es.eigenvectors();
  Dense out = v * d.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

Dense polyvalm(std::span<const double> coeffs, const Dense& b) {
  require_square_finite(b, "polyvalm");
  const Index n = b.rows();
  if (coeffs.empty()) return Dense::Zero(n, n);
  Dense acc = coeffs.back() * Dense::Identity(n, n);
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
    acc = acc * b;
    acc.diagonal().array() += *it;
  }
  return acc;
}

bool kernel_available(const ScalarFunction& f, bool hermitian) {
  return hermitian || f.kind() == FunKind::polynomial || f.kind() == FunKind::exp;
}

Dense apply(const Dense& b, const ScalarFunction& f, bool hermitian) {
  if (f.kind() == FunKind::polynomial) return polyvalm(f.coeffs(), f.scale() * b);
  if (hermitian) return funm_hermitian(b, f);
  if (f.kind() == FunKind::exp) return expm(f.scale() * b);
  throw Error(Errc::unsupported_kernel,
              "no dense kernel for " + f.name() + " on a non-symmetric matrix");
}

ChebApprox cheb_approx(const ScalarFunction& f, double lo, double hi, int k) {
  if (k < 0) throw Error(Errc::invalid_argument, "cheb_approx: k must be >= 0");
  if (!(lo <= hi)) throw Error(Errc::invalid_argument, "cheb_approx: empty interval");
  ChebApprox p;
  p.lo = lo;
  p.hi = hi;
  const std::size_t m = static_cast<std::size_t>(k) + 1;
  p.cheb.assign(m, 0.0);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  if (half == 0.0) {
    p.cheb[0] = f(mid);
    p.monomial = {p.cheb[0]};
    return p;
  }

  std::vector<double> fx(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double y = std::cos(std::numbers::pi * (j + 0.5) / m);
    fx[j] = f(mid + half * y);
  }
  for (std::size_t q = 0; q < m; ++q) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      s += fx[j] * std::cos(std::numbers::pi * q * (j + 0.5) / m);
    p.cheb[q] = (q == 0 ? 1.0 : 2.0) * s / m;
  }

  // Clenshaw in polynomial arithmetic with y = alpha x + beta
  const double alpha = 1.0 / half;
  const double beta = -mid / half;
  std::vector<double> b1, b2;
  for (std::size_t q = m; q-- > 1;) {
    auto next = poly_add(poly_mul_linear(b1, 2 * alpha, 2 * beta), b2, -1.0);
    next = poly_add(std::move(next), {p.cheb[q]}, 1.0);
    b2 = std::move(b1);
    b1 = std::move(next);
  }
  p.monomial = poly_add(poly_add(poly_mul_linear(b1, alpha, beta), b2, -1.0), {p.cheb[0]}, 1.0);
  p.monomial.resize(m, 0.0);

  const std::size_t samples = std::max<std::size_t>(2, 10 * m);
  double err = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = mid + half * std::cos(std::numbers::pi * i / (samples - 1));
    err = std::max(err, std::abs(f(x) - cheb_eval(p, x)));
  }
  p.error = std::isfinite(err) ? err : kInf;
  return p;
}

double cheb_eval(const ChebApprox& p, double x) {
  const double half = 0.5 * (p.hi - p.lo);
  if (half == 0.0) return p.cheb[0];
  const double y = (x - 0.5 * (p.lo + p.hi)) / half;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t q = p.cheb.size(); q-- > 1;) {
    const double b0 = p.cheb[q] + 2 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return p.cheb[0] + y * b1 - b2;
}

namespace {

SpectralEnclosure enclosure_from(const Vector& diag, const Vector& row_off,
                                 const Vector& row_abs, const Vector& col_abs,
                                 bool symmetric, bool has_offdiag) {
  if (diag.size() == 0) return SpectralEnclosure::interval(0, 0, SpectralEnclosure::Source::exact);
  if (symmetric) {
    if (!has_offdiag)
      return SpectralEnclosure::interval(diag.minCoeff(), diag.maxCoeff(),
                                         SpectralEnclosure::Source::exact);
    return SpectralEnclosure::interval((diag - row_off).minCoeff(), (diag + row_off).maxCoeff(),
                                       SpectralEnclosure::Source::gershgorin);
  }
  const double r = std::sqrt(col_abs.maxCoeff() * row_abs.maxCoeff());
  return SpectralEnclosure::disk(r, SpectralEnclosure::Source::norm_bound);
}

}  // namespace

bool is_hermitian(const DiagMatrix& a) { return a.is_symmetric(1e-12 * a.max_abs()); }

SpectralEnclosure enclosure(const DiagMatrix& a) {
  const Index n = a.n();
  Vector diag = Vector::Zero(n), row_off = Vector::Zero(n);
  Vector row_abs = Vector::Zero(n), col_abs = Vector::Zero(n);
  bool has_off = false;
  for (const auto& [r, v] : a.diagonals()) {
    for (Index t = 0; t < v.size(); ++t) {
      const Index i = r >= 0 ? t : t - r;
      const Index j = i + r;
      const double x = std::abs(v(t));
      row_abs(i) += x;
      col_abs(j) += x;
      if (r == 0) diag(i) = v(t);
      else {
        row_off(i) += x;
        if (x != 0.0) has_off = true;
      }
    }
  }
  return enclosure_from(diag, row_off, row_abs, col_abs, is_hermitian(a), has_off);
}

SpectralEnclosure enclosure(const Dense& a) {
  require_square_finite(a, "enclosure");
  Vector diag = a.diagonal();
  Vector row_abs = a.cwiseAbs().rowwise().sum();
  Vector col_abs = a.cwiseAbs().colwise().sum().transpose();
  Vector row_off = row_abs - diag.cwiseAbs();
  const double amax = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  const bool sym = (a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * amax;
  return enclosure_from(diag, row_off, row_abs, col_abs, sym, row_off.size() && row_off.maxCoeff() > 0);
}

double approximation_error(const ScalarFunction& f, const SpectralEnclosure& enc, int k) {
  if (k < 0) throw Error(Errc::invalid_argument, "approximation_error: k must be >= 0");
  if (f.kind() == FunKind::polynomial && f.degree() <= k) return 0.0;
  if (enc.kind == SpectralEnclosure::Kind::interval) {
    if (!f.defined_on(enc.lo, enc.hi)) return kInf;
    return cheb_approx(f, enc.lo, enc.hi, k).error;
  }
  if (enc.radius == 0.0) return 0.0;
  // branch point or pole at the centre of the disk
  if (f.kind() != FunKind::exp && f.kind() != FunKind::polynomial &&
      f.kind() != FunKind::callback)
    return kInf;
  // Taylor remainder on |z| <= rho from the maximum on |z| = tau rho
  double best = kInf;
  for (double tau : {1.5, 2.0, 3.0, 5.0, 8.0}) {
    double m = 0.0;
    for (int s = 0; s < 256; ++s) {
      const double th = 2 * std::numbers::pi * s / 256;
      m = std::max(m, std::abs(f(std::polar(tau * enc.radius, th))));
    }
    if (!std::isfinite(m)) continue;
    best = std::min(best, m * std::pow(tau, -(k + 1)) / (1 - 1 / tau));
  }
  return best;
}

double crouzeix_q(bool hermitian) { return hermitian ? 1.0 : 1.0 + std::numbers::sqrt2; }

}  // namespace diagfun
