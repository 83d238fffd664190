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

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "diagfun/densefun.hpp"
#include "diagfun/matstore.hpp"
#include "diagfun/parallel.hpp"

namespace diagfun {

/// Real symmetric Laurent polynomial a(x) = sum_{|k|<=r} a_|k| x^k.
struct LaurentSymbol {
  std::vector<double> a;  // a_0..a_r

  static LaurentSymbol parse(const std::string& csv);

  int r() const { return static_cast<int>(a.size()) - 1; }
  /// g(x) = a(e^{ix}) = a_0 + 2 sum a_k cos(kx)
  double g(double x) const;
  double dg(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;
  ToeplitzMatrix matrix(Index n) const;
};

/// The r - 1 roots of a(x) = lambda with modulus > 1, sorted by (modulus, argument).
std::vector<std::complex<double>> outer_roots(const LaurentSymbol& sym, double lambda);

/// Nested trapezoid on [a, b]; doubles from min_points intervals until
/// successive estimates differ by < tol (1 + |estimate|). Throws
/// quadrature_failure past max_points.
double quadrature(const std::function<double(double)>& fn, double a, double b, double tol = 1e-12,
                  Index min_points = 64, Index max_points = Index{1} << 20);

/// e^{-x} I_nu(x) for nu = 0..nu_max (Miller backward recurrence).
std::vector<double> scaled_bessel_i(double x, int nu_max);

/// Limit of [f(T_n)]_{pl} for T_n = tridiag(b, c, b).
double tridiag_element(double b, double c, const ScalarFunction& f, Index p, Index l,
                       double tol = 1e-12);
/// Whole n x n matrix of tridiag limits; entries with p + l > n + 1 use the
/// reflected indices.
Dense tridiag_matrix(double b, double c, const ScalarFunction& f, Index n, double tol = 1e-12);

/// Limit of [exp(-alpha T_n)]_{pl} with T_n = tridiag(-1, 2, -1).
double exp_tridiag_element(double alpha, Index p, Index l);

/// Precomputed data for the closed-form elements of f(T_n(a)).
class SymbolAnalysis {
 public:
  const LaurentSymbol& symbol() const { return sym_; }
  const ScalarFunction& function() const { return f_; }
  bool certified() const { return certified_; }
  /// exp(delta0) = min |u_v| over the sampled range.
  double delta0() const { return delta0_; }
  double max_q() const { return max_q_; }
  double max_f() const { return max_f_; }
  double g_min() const { return g_min_; }
  double g_max() const { return g_max_; }
  Index grid() const { return grid_; }

  double theta(double x) const;

  /// (2/pi) int f(g) sin(tx + Theta/2) sin(sx + Theta/2)
  double a_term(Index s, Index t, double tol = 1e-12) const;
  /// A(s, t) + B(s, t)
  double corner_term(Index s, Index t, double tol = 1e-12) const;

 private:
  friend SymbolAnalysis analyze(const LaurentSymbol&, const ScalarFunction&, Index);

  struct Node {
    double fg = 0.0;
    double half_theta = 0.0;
    std::vector<std::complex<double>> u, q;
  };
  Node node(double x) const;
  double integrate(Index s, Index t, bool corner, double tol) const;

  LaurentSymbol sym_;
  ScalarFunction f_ = ScalarFunction::exp();
  bool certified_ = false;
  double delta0_ = 0.0, max_q_ = 0.0, max_f_ = 0.0, g_min_ = 0.0, g_max_ = 0.0;
  Index grid_ = 0;
  std::vector<Node> nodes_;  // x_j = j pi / grid_
};

/// Throws uncertified_symbol if r >= 2 and g is not increasing on (0, pi),
/// ill_conditioned if an outer root approaches the unit circle.
SymbolAnalysis analyze(const LaurentSymbol& sym, const ScalarFunction& f, Index grid = 4096);

/// Closed-form approximation of [f(T_n(a))]_{st} with cut-off m.
double element_r2(const SymbolAnalysis& an, Index n, Index s, Index t, Index m,
                  double tol = 1e-12);
/// All elements with |s - t| <= m.
Dense closedform_matrix(const SymbolAnalysis& an, Index n, Index m, const ExecPolicy& exec = {},
                        double tol = 1e-12);

struct MChoice {
  Index m0 = 0, m1 = 0, m2 = 0;
  Index m() const { return std::max({m0, m1, m2}); }
};
MChoice choose_m(const SymbolAnalysis& an, double epsilon);

}  // namespace diagfun
