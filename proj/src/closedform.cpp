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

#include "diagfun/closedform.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "diagfun/error.hpp"

namespace diagfun {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Index pow2_at_least(Index x) {
  Index p = 1;
  while (p < x) p <<= 1;
  return p;
}

bool converged(double prev, double next, double tol) {
  return std::abs(next - prev) < tol * (1.0 + std::abs(next));
}

// Closed trapezoid on [0, pi] over nodes j pi / N, doubling N. eval(j, N) returns h(x_j).
template <typename Eval>
double nested_trapezoid(Eval&& eval, Index min_points, Index max_points, double tol) {
  Index n = std::max<Index>(2, pow2_at_least(min_points));
  double sum = 0.5 * (eval(0, n) + eval(n, n));
  for (Index j = 1; j < n; ++j) sum += eval(j, n);
  double est = kPi / static_cast<double>(n) * sum;
  while (n < max_points) {
    n *= 2;
    for (Index j = 1; j < n; j += 2) sum += eval(j, n);
    const double next = kPi / static_cast<double>(n) * sum;
    if (converged(est, next, tol)) return next;
    est = next;
  }
  throw Error(Errc::quadrature_failure, "quadrature: no convergence with " +
                                            std::to_string(max_points) + " points");
}

}  // namespace

LaurentSymbol LaurentSymbol::parse(const std::string& csv) {
  LaurentSymbol s;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      s.a.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::invalid_argument, "symbol: cannot parse '" + item + "'");
    }
  }
  if (s.a.size() < 2 || s.a.back() == 0.0)
    throw Error(Errc::invalid_argument, "symbol: need a_0..a_r with r >= 1 and a_r != 0");
  return s;
}

double LaurentSymbol::g(double x) const {
  double v = a[0];
  for (int k = 1; k <= r(); ++k) v += 2.0 * a[static_cast<std::size_t>(k)] * std::cos(k * x);
  return v;
}

double LaurentSymbol::dg(double x) const {
  double v = 0.0;
  for (int k = 1; k <= r(); ++k) v -= 2.0 * k * a[static_cast<std::size_t>(k)] * std::sin(k * x);
  return v;
}

cplx LaurentSymbol::operator()(cplx z) const {
  cplx v = a[0];
  for (int k = 1; k <= r(); ++k) v += a[static_cast<std::size_t>(k)] * (std::pow(z, k) + std::pow(z, -k));
  return v;
}

ToeplitzMatrix LaurentSymbol::matrix(Index n) const {
  Vector c = Vector::Zero(n);
  for (Index k = 0; k <= r() && k < n; ++k) c(k) = a[static_cast<std::size_t>(k)];
  return ToeplitzMatrix::symmetric(c);
}

std::vector<cplx> outer_roots(const LaurentSymbol& sym, double lambda) {
  const int r = sym.r();
  // x^r (a(x) - lambda), coefficients in increasing degree
  Vector c(2 * r + 1);
  for (int k = -r; k <= r; ++k) c(r + k) = sym.a[static_cast<std::size_t>(std::abs(k))];
  c(r) -= lambda;
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
  std::vector<cplx> roots(solver.roots().begin(), solver.roots().end());
  std::sort(roots.begin(), roots.end(),
            [](const cplx& x, const cplx& y) { return std::abs(x) > std::abs(y); });
  roots.resize(static_cast<std::size_t>(r - 1));
  std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
    const double mx = std::abs(x), my = std::abs(y);
    return mx != my ? mx < my : std::arg(x) < std::arg(y);
  });
  return roots;
}

double quadrature(const std::function<double(double)>& fn, double a, double b, double tol,
                  Index min_points, Index max_points) {
  const double scale = (b - a) / kPi;
  return scale * nested_trapezoid(
                     [&](Index j, Index n) {
                       return fn(a + (b - a) * static_cast<double>(j) / static_cast<double>(n));
                     },
                     min_points, max_points, tol);
}

std::vector<double> scaled_bessel_i(double x, int nu_max) {
  if (x < 0.0 || nu_max < 0) throw Error(Errc::invalid_argument, "scaled_bessel_i: need x >= 0, nu >= 0");
  std::vector<double> out(static_cast<std::size_t>(nu_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  int start = nu_max + static_cast<int>(std::ceil(std::sqrt(80.0 * x))) + 40;
  start += start % 2;
  double above = 0.0, cur = 1e-300, sum = 0.0;
  for (int k = start; k >= 1; --k) {
    const double below = 2.0 * k / x * cur + above;
    above = cur;
    cur = below;
    // cur now holds order k-1, above holds order k
    sum += 2.0 * above;
    if (k - 1 <= nu_max) out[static_cast<std::size_t>(k - 1)] = cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      sum *= 1e-250;
      for (double& v : out) v *= 1e-250;
    }
  }
  sum += cur;  // e^x = I_0 + 2 sum_{k>=1} I_k
  for (double& v : out) v /= sum;
  return out;
}

double tridiag_element(double b, double c, const ScalarFunction& f, Index p, Index l, double tol) {
  const double d = static_cast<double>(p - l), s = static_cast<double>(p + l);
  return quadrature(
             [&](double x) { return f(c + 2.0 * b * std::cos(x)) * (std::cos(d * x) - std::cos(s * x)); },
             0.0, kPi, tol, std::max<Index>(64, 2 * (p + l))) /
         kPi;
}

Dense tridiag_matrix(double b, double c, const ScalarFunction& f, Index n, double tol) {
  // tau_k = (1/pi) int f(c + 2b cos x) cos(kx), k = 0..n+1, all on one grid
  const Index kmax = n + 1;
  Index pts = pow2_at_least(std::max<Index>(64, 2 * kmax));
  Vector prev;
  for (;; pts *= 2) {
    if (pts > (Index{1} << 20))
      throw Error(Errc::quadrature_failure, "tridiag_matrix: no convergence");
    Vector fx(pts + 1);
    for (Index j = 0; j <= pts; ++j) {
      fx(j) = f(c + 2.0 * b * std::cos(kPi * static_cast<double>(j) / static_cast<double>(pts)));
      if (!std::isfinite(fx(j))) throw Error(Errc::domain_error, "tridiag_matrix: f not finite on the symbol range");
    }
    fx(0) *= 0.5;
    fx(pts) *= 0.5;
    Vector tau(kmax + 1);
    for (Index k = 0; k <= kmax; ++k) {
      double acc = 0.0;
      for (Index j = 0; j <= pts; ++j)
        acc += fx(j) * std::cos(kPi * static_cast<double>(k * j % (2 * pts)) / static_cast<double>(pts));
      tau(k) = acc / static_cast<double>(pts);
    }
    if (prev.size() && (tau - prev).cwiseAbs().maxCoeff() < tol * (1.0 + tau.cwiseAbs().maxCoeff())) {
      Dense out(n, n);
      for (Index p = 1; p <= n; ++p)
        for (Index l = 1; l <= n; ++l)  // Hankel part from the nearer corner (per-symmetry)
          out(p - 1, l - 1) = tau(std::abs(p - l)) - tau(std::min(p + l, 2 * n + 2 - p - l));
      return out;
    }
    prev = std::move(tau);
  }
}

double exp_tridiag_element(double alpha, Index p, Index l) {
  if (alpha < 0.0) throw Error(Errc::invalid_argument, "exp_tridiag_element: alpha must be >= 0");
  const auto iv = scaled_bessel_i(2.0 * alpha, static_cast<int>(p + l));
  return iv[static_cast<std::size_t>(std::abs(p - l))] - iv[static_cast<std::size_t>(p + l)];
}

SymbolAnalysis::Node SymbolAnalysis::node(double x) const {
  Node nd;
  const double lambda = sym_.g(x);
  nd.fg = f_(lambda);
  if (!std::isfinite(nd.fg))
    throw Error(Errc::domain_error, "closedform: f is not finite at g(x) = " + std::to_string(lambda));
  if (sym_.r() == 1) return nd;
  nd.u = outer_roots(sym_, lambda);
  const cplx e(std::cos(x), std::sin(x));
  double habs = 1.0;
  for (const cplx& u : nd.u) {
    const cplx factor = 1.0 - e / u;
    habs *= std::abs(factor);
    nd.half_theta += std::arg(factor);
  }
  for (std::size_t v = 0; v < nd.u.size(); ++v) {
    const cplx uv = nd.u[v];
    cplx hp = -1.0 / uv;
    for (std::size_t w = 0; w < nd.u.size(); ++w)
      if (w != v) hp *= 1.0 - uv / nd.u[w];
    nd.q.push_back(habs * std::sin(x) / ((uv - e) * (uv - std::conj(e)) * hp));
  }
  return nd;
}

double SymbolAnalysis::theta(double x) const { return 2.0 * node(x).half_theta; }

double SymbolAnalysis::integrate(Index s, Index t, bool corner, double tol) const {
  auto value = [&](const Node& nd, double x) {
    double ys = std::sin(static_cast<double>(s) * x + nd.half_theta);
    double yt = std::sin(static_cast<double>(t) * x + nd.half_theta);
    if (corner)
      for (std::size_t v = 0; v < nd.u.size(); ++v) {
        ys -= (nd.q[v] * std::pow(nd.u[v], -static_cast<double>(s))).real();
        yt -= (nd.q[v] * std::pow(nd.u[v], -static_cast<double>(t))).real();
      }
    return nd.fg * ys * yt;
  };
  auto eval = [&](Index j, Index n) {
    const double x = kPi * static_cast<double>(j) / static_cast<double>(n);
    if (n <= grid_) return value(nodes_[static_cast<std::size_t>(j * (grid_ / n))], x);
    return value(node(x), x);
  };
  return 2.0 / kPi * nested_trapezoid(eval, std::max<Index>(64, s + t), Index{1} << 20, tol);
}

double SymbolAnalysis::a_term(Index s, Index t, double tol) const { return integrate(s, t, false, tol); }
double SymbolAnalysis::corner_term(Index s, Index t, double tol) const {
  return integrate(s, t, sym_.r() >= 2, tol);
}

SymbolAnalysis analyze(const LaurentSymbol& sym, const ScalarFunction& f, Index grid) {
  if (sym.a.size() < 2 || sym.a.back() == 0.0)
    throw Error(Errc::invalid_argument, "analyze: need r >= 1 and a_r != 0");
  SymbolAnalysis an;
  an.sym_ = sym;
  an.f_ = f;
  an.grid_ = pow2_at_least(std::max<Index>(64, grid));
  const Index n = an.grid_;
  const int r = sym.r();
  if (r >= 2)
    for (Index j = 1; j < n; ++j)
      if (!(sym.dg(kPi * static_cast<double>(j) / static_cast<double>(n)) > 0.0))
        throw Error(Errc::uncertified_symbol,
                    "analyze: g is not strictly increasing on (0, pi); the closed form needs r = 1 or a monotone symbol");
  an.certified_ = true;

  an.g_min_ = std::numeric_limits<double>::infinity();
  an.g_max_ = -an.g_min_;
  double min_u = std::numeric_limits<double>::infinity();
  an.nodes_.reserve(static_cast<std::size_t>(n) + 1);
  for (Index j = 0; j <= n; ++j) {
    const double x = kPi * static_cast<double>(j) / static_cast<double>(n);
    const double lambda = sym.g(x);
    an.g_min_ = std::min(an.g_min_, lambda);
    an.g_max_ = std::max(an.g_max_, lambda);
    an.nodes_.push_back(an.node(x));
    const auto& nd = an.nodes_.back();
    an.max_f_ = std::max(an.max_f_, std::abs(nd.fg));
    for (std::size_t v = 0; v < nd.u.size(); ++v) {
      min_u = std::min(min_u, std::abs(nd.u[v]));
      an.max_q_ = std::max(an.max_q_, std::abs(nd.q[v]));
    }
  }
  if (r >= 2 && min_u - 1.0 < 1e-8)
    throw Error(Errc::ill_conditioned, "analyze: an outer root reaches the unit circle");
  an.delta0_ = r >= 2 ? std::log(min_u) : std::numeric_limits<double>::infinity();
  return an;
}

double element_r2(const SymbolAnalysis& an, Index n, Index s, Index t, Index m, double tol) {
  if (!an.certified()) throw Error(Errc::uncertified_symbol, "element_r2: analysis not certified");
  if (m < 1) throw Error(Errc::invalid_argument, "element_r2: m must be >= 1");
  if (s < 1 || t < 1 || s > n || t > n) throw Error(Errc::out_of_range, "element_r2: index outside 1..n");
  // per-symmetry: answer from the half with s + t <= n + 1
  if (s + t > n + 1) s = n + 1 - s, t = n + 1 - t;
  if (s > t) std::swap(s, t);
  if (std::abs(s - t) > m) return 0.0;
  if (std::min(s, t) <= m) {
    if (std::max(s, t) >= n + 1 - m && n > 3 * m) return 0.0;
    return an.corner_term(s, t, tol);
  }
  return an.a_term(s, t, tol);
}

Dense closedform_matrix(const SymbolAnalysis& an, Index n, Index m, const ExecPolicy& exec, double tol) {
  Dense out = Dense::Zero(n, n);
  for_each_task(exec, n, [&](Index row) {
    const Index s = row + 1;
    for (Index t = s; t <= std::min(n, s + m); ++t) out(s - 1, t - 1) = element_r2(an, n, s, t, m, tol);
  });
  out.triangularView<Eigen::StrictlyLower>() = out.transpose();
  return out;
}

MChoice choose_m(const SymbolAnalysis& an, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(Errc::invalid_argument, "choose_m: epsilon must be positive");
  MChoice out;
  const int r = an.symbol().r();
  if (r >= 2) {
    if (!(an.delta0() > 1e-12)) throw Error(Errc::ill_conditioned, "choose_m: delta0 is not positive");
    const double rm1 = r - 1;
    auto smallest = [&](double c) {
      return c > 1.0 ? static_cast<Index>(std::ceil(std::log(c) / an.delta0())) : Index{0};
    };
    out.m0 = smallest(12.0 * an.max_f() * an.max_q() * rm1 / epsilon);
    out.m1 = smallest(24.0 * an.max_f() * an.max_q() * an.max_q() * rm1 * rm1 / epsilon);
  }
  // entries beyond r k diagonals vanish in p_k(T), so |f(T)_st| <= ||f - p_k||
  const auto enc = SpectralEnclosure::interval(an.g_min(), an.g_max(), SpectralEnclosure::Source::exact);
  for (int k = 0; k <= 400; ++k)
    if (approximation_error(an.function(), enc, k) <= epsilon) {
      out.m2 = static_cast<Index>(r) * k;
      return out;
    }
  throw Error(Errc::ill_conditioned, "choose_m: no polynomial degree <= 400 reaches epsilon");
}

}  // namespace diagfun
