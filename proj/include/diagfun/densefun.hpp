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
#include <span>
#include <string>
#include <vector>

#include "diagfun/matstore.hpp"

namespace diagfun {

enum class FunKind { exp, log, sqrt, inv, inv_sqrt, polynomial, callback };

/// Scalar function f(x) = base(scale * x).
///
/// The scale lets exp(-x) and similar rescaled kernels keep their fast
/// dense path. Polynomial coefficients are in increasing degree.
class ScalarFunction {
 public:
  using RealFn = std::function<double(double)>;
  using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

  static ScalarFunction exp(double scale = 1.0) { return {FunKind::exp, scale}; }
  static ScalarFunction log(double scale = 1.0) { return {FunKind::log, scale}; }
  static ScalarFunction sqrt(double scale = 1.0) { return {FunKind::sqrt, scale}; }
  static ScalarFunction inv(double scale = 1.0) { return {FunKind::inv, scale}; }
  static ScalarFunction inv_sqrt(double scale = 1.0) { return {FunKind::inv_sqrt, scale}; }
  static ScalarFunction polynomial(std::vector<double> coeffs);
  /// Pure user function; the complex form is optional and only needed by
  /// bound estimates on disks.
  static ScalarFunction callback(std::string name, RealFn f, ComplexFn fc = {});

  /// "exp", "log", "sqrt", "inv", "inv-sqrt", "poly:c0,c1,..." with an
  /// optional "@scale" suffix, e.g. "exp@-1".
  static ScalarFunction parse(const std::string& spec);

  FunKind kind() const { return kind_; }
  double scale() const { return scale_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Polynomial degree, or -1 for non-polynomial kinds.
  int degree() const;
  std::string name() const;

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;

  /// True when f is finite on the whole closed interval.
  bool defined_on(double lo, double hi) const;

 private:
  ScalarFunction(FunKind kind, double scale) : kind_(kind), scale_(scale) {}

  FunKind kind_ = FunKind::exp;
  double scale_ = 1.0;
  std::vector<double> coeffs_;
  std::string name_;
  RealFn real_;
  ComplexFn complex_;
};

/// Set known to contain every eigenvalue of a matrix.
struct SpectralEnclosure {
  enum class Kind { interval, disk };
  enum class Source { exact, gershgorin, norm_bound };

  Kind kind = Kind::interval;
  Source source = Source::exact;
  double lo = 0.0;      // interval
  double hi = 0.0;      // interval
  double radius = 0.0;  // disk centred at 0

  static SpectralEnclosure interval(double lo, double hi, Source src) {
    return {Kind::interval, src, lo, hi, 0.0};
  }
  static SpectralEnclosure disk(double radius, Source src) {
    return {Kind::disk, src, 0.0, 0.0, radius};
  }
  bool contains(double x) const;
};

/// Scaling-and-squaring Padé exponential.
Dense expm(const Dense& b);

/// V f(Λ) Vᵀ for symmetric b; the result is symmetrized.
Dense funm_hermitian(const Dense& b, const ScalarFunction& f);

/// Σ c_s b^s by Horner's rule.
Dense polyvalm(std::span<const double> coeffs, const Dense& b);

/// Dense f(b). Polynomials go through polyvalm, symmetric input through the
/// eigendecomposition, non-symmetric input supports exp only.
Dense apply(const Dense& b, const ScalarFunction& f, bool hermitian);

/// True when apply() has a kernel for (f, symmetry class).
bool kernel_available(const ScalarFunction& f, bool hermitian);

struct ChebApprox {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> cheb;      // coefficients of T_0..T_k on [lo, hi]
  std::vector<double> monomial;  // the same polynomial in powers of x
  double error = 0.0;            // sampled max |f - p|
};

/// Degree-k Chebyshev interpolant of f on [lo, hi] at first-kind nodes.
ChebApprox cheb_approx(const ScalarFunction& f, double lo, double hi, int k);
double cheb_eval(const ChebApprox& p, double x);

/// Gershgorin interval for symmetric a, exact range for diagonal a,
/// disk of radius sqrt(‖a‖₁‖a‖∞) otherwise.
SpectralEnclosure enclosure(const DiagMatrix& a);
SpectralEnclosure enclosure(const Dense& a);

/// Symmetry test used by every engine: tolerance 1e-12 · max|a|.
bool is_hermitian(const DiagMatrix& a);

/// Stand-in for min over degree-k polynomials of ‖f − p‖ on the enclosure.
///
/// Interval: Chebyshev interpolation error. Disk: Cauchy estimate on the
/// best of a few larger circles. Zero when f is a polynomial of degree <= k,
/// +inf when f is singular on the enclosure.
double approximation_error(const ScalarFunction& f, const SpectralEnclosure& enc, int k);

/// Crouzeix–Palencia constant: 1 for Hermitian input, 1 + √2 otherwise.
double crouzeix_q(bool hermitian);

}  // namespace diagfun
