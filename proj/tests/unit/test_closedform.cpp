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

#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>

#include "diagfun/closedform.hpp"
#include "diagfun/error.hpp"
#include "oracles.hpp"

using namespace diagfun;

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const Dense& a) { return Eigen::JacobiSVD<Dense>(a).singularValues()(0); }

Dense dense_f(const LaurentSymbol& sym, Index n, double (*f)(double)) {
  return oracle::funm_sym(sym.matrix(n).to_dense(), f);
}

double exp_fn(double x) { return std::exp(x); }
double inv_sqrt_fn(double x) { return 1.0 / std::sqrt(x); }

const LaurentSymbol a1{{4.0, -1.0}};
const LaurentSymbol a2{{2.0, -1.0, 0.2}};

}  // namespace

TEST_CASE("trapezoid quadrature", "[closedform]") {
  CHECK(quadrature([](double) { return 1.0; }, 0.0, kPi) == Catch::Approx(kPi).epsilon(1e-15));
  for (int k = 1; k <= 40; ++k)
    CHECK(std::abs(quadrature([k](double x) { return std::cos(k * x); }, 0.0, kPi)) < 1e-13);
  const double i0 = boost::math::cyl_bessel_i(0, 1.0);
  CHECK(quadrature([](double x) { return std::exp(std::cos(x)); }, 0.0, kPi) ==
        Catch::Approx(kPi * i0).epsilon(1e-13));
  CHECK(kPi * i0 == Catch::Approx(3.97746).epsilon(1e-6));
  CHECK_THROWS_AS(quadrature([](double x) { return x < 1.0 ? 0.0 : 1.0 / (x - 1.0 + 1e-300); }, 0.0, kPi,
                             1e-14, 64, 1024),
                  Error);
}

TEST_CASE("scaled Bessel functions match the library oracle", "[closedform]") {
  for (double x : {1e-3, 0.5, 1.0, 2.0, 7.5, 30.0, 250.0, 600.0}) {
    const auto iv = scaled_bessel_i(x, 60);
    for (int nu = 0; nu <= 60; ++nu) {
      const double ref = boost::math::cyl_bessel_i(nu, x) * std::exp(-x);
      CHECK(std::abs(iv[static_cast<std::size_t>(nu)] - ref) <= 1e-13 * std::max(ref, 1e-300) + 1e-300);
    }
  }
  // beyond the oracle's range: normalization and the three-term recurrence
  for (double x : {3000.0, 2.0e5}) {
    const auto iv = scaled_bessel_i(x, 40);
    double sum = iv[0];
    const auto all = scaled_bessel_i(x, static_cast<int>(std::sqrt(80.0 * x)) + 40);
    for (std::size_t k = 1; k < all.size(); ++k) sum += 2.0 * all[k];
    CHECK(sum == Catch::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k < 40; ++k)
      CHECK(iv[static_cast<std::size_t>(k - 1)] - iv[static_cast<std::size_t>(k + 1)] ==
            Catch::Approx(2.0 * k / x * iv[static_cast<std::size_t>(k)]).epsilon(1e-10));
  }
  const auto zero = scaled_bessel_i(0.0, 3);
  CHECK(zero == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(scaled_bessel_i(-1.0, 2), Error);
}

TEST_CASE("exp of the heat-equation matrix via Bessel functions", "[closedform]") {
  CHECK(exp_tridiag_element(0.0, 3, 3) == 1.0);
  CHECK(exp_tridiag_element(0.0, 3, 4) == 0.0);
  CHECK(exp_tridiag_element(1.0, 1, 1) == Catch::Approx(0.2153).margin(5e-5));
  for (Index p : {1, 4, 9})
    for (Index l : {1, 2, 7}) CHECK(exp_tridiag_element(0.8, p, l) == exp_tridiag_element(0.8, l, p));

  // agreement with the integral form
  for (double alpha : {0.3, 1.0, 4.0})
    for (Index p : {1, 5, 20})
      for (Index l : {1, 6, 22}) {
        const double integral = tridiag_element(alpha, -2.0 * alpha, ScalarFunction::exp(), p, l);
        CHECK(std::abs(integral - exp_tridiag_element(alpha, p, l)) < 1e-10);
      }

  // dense oracle at n = 400, alpha = 1: exp(-T) with T = tridiag(-1, 2, -1)
  const Index n = 400;
  Dense t = LaurentSymbol{{2.0, -1.0}}.matrix(n).to_dense();
  Dense ref = oracle::expm_taylor(-t);
  double err = 0.0;
  for (Index p = 1; p <= 60; ++p)
    for (Index l = 1; l <= 60; ++l) err = std::max(err, std::abs(exp_tridiag_element(1.0, p, l) - ref(p - 1, l - 1)));
  CHECK(err <= 1e-8);
}

TEST_CASE("tridiagonal limits", "[closedform]") {
  auto id = ScalarFunction::polynomial({0.0, 1.0});
  CHECK(tridiag_element(-1.0, 4.0, id, 5, 5) == Catch::Approx(4.0).epsilon(1e-13));
  CHECK(tridiag_element(-1.0, 4.0, id, 5, 6) == Catch::Approx(-1.0).epsilon(1e-13));
  CHECK(std::abs(tridiag_element(-1.0, 4.0, id, 5, 9)) < 1e-13);

  const Index n = 200;
  Dense ref = oracle::funm_sym(a1.matrix(n).to_dense(), exp_fn);
  for (Index p : {20, 57, 100})
    for (Index l : {p - 3, p, p + 5}) CHECK(std::abs(tridiag_element(-1.0, 4.0, ScalarFunction::exp(), p, l) - ref(p - 1, l - 1)) <= 1e-8);

  Dense whole = tridiag_matrix(-1.0, 4.0, ScalarFunction::inv_sqrt(), 100);
  CHECK(norm2(whole - dense_f(a1, 100, inv_sqrt_fn)) <= 1e-6);
  CHECK(whole(3, 9) == Catch::Approx(tridiag_element(-1.0, 4.0, ScalarFunction::inv_sqrt(), 4, 10)).epsilon(1e-11));
}

TEST_CASE("symbol evaluation and outer roots", "[closedform]") {
  CHECK(LaurentSymbol::parse("4,-1").a == std::vector<double>{4.0, -1.0});
  CHECK_THROWS_AS(LaurentSymbol::parse("4"), Error);
  CHECK_THROWS_AS(LaurentSymbol::parse("1,2,0"), Error);
  CHECK_THROWS_AS(LaurentSymbol::parse("1,x"), Error);

  CHECK(a1.g(0.0) == Catch::Approx(2.0));
  CHECK(a1.g(kPi) == Catch::Approx(6.0));
  for (int j = 1; j < 50; ++j) CHECK(a1.dg(kPi * j / 50.0) > 0.0);
  CHECK(a2.g(kPi / 2) == Catch::Approx(1.6));
  CHECK(outer_roots(a1, 3.0).empty());

  // closed-form root of the pentadiagonal symbol across the range of g
  for (int j = 0; j < 100; ++j) {
    const double lambda = a2.g(kPi * (j + 0.5) / 100.0);
    const auto u = outer_roots(a2, lambda);
    REQUIRE(u.size() == 1);
    const double closed = 1.25 + std::sqrt(-7.0 + 20.0 * lambda) / 4.0 +
                          std::sqrt(2.0 + 10.0 * std::sqrt(-7.0 + 20.0 * lambda) + 20.0 * lambda) / 4.0;
    CHECK(std::abs(u[0] - closed) < 1e-10);
    CHECK(std::abs(a2(u[0]) - lambda) < 1e-10);
  }
  CHECK(outer_roots(a2, 1.6)[0].real() == Catch::Approx(4.79128785).epsilon(1e-9));

  // r = 3: roots come in conjugate pairs or are real; residual is small
  LaurentSymbol a3{{3.0, -1.2, 0.25, -0.02}};
  for (double lambda : {0.9, 2.0, 4.0}) {
    const auto u = outer_roots(a3, lambda);
    REQUIRE(u.size() == 2);
    for (const auto& z : u) {
      CHECK(std::abs(z) > 1.0);
      CHECK(std::abs(a3(z) - lambda) < 1e-9 * std::max(1.0, std::abs(z) * std::abs(z) * std::abs(z)));
    }
  }
}

TEST_CASE("analysis of symbols", "[closedform]") {
  auto an1 = analyze(a1, ScalarFunction::exp());
  CHECK(an1.certified());
  CHECK(an1.g_min() == Catch::Approx(2.0));
  CHECK(an1.g_max() == Catch::Approx(6.0));
  CHECK(an1.theta(1.0) == 0.0);
  CHECK(an1.max_q() == 0.0);

  auto an2 = analyze(a2, ScalarFunction::exp());
  CHECK(an2.delta0() == Catch::Approx(std::log(outer_roots(a2, a2.g(0.0))[0].real())).epsilon(1e-9));
  for (double x : {0.3, 1.0, 2.5}) CHECK(an2.theta(-x) == Catch::Approx(-an2.theta(x)).margin(1e-14));
  CHECK(std::abs(an2.theta(0.0)) < 1e-14);
  CHECK(std::abs(an2.theta(kPi)) < 1e-12);

  // g(x) = 2 + 2cos x - ... decreasing: no certificate for r >= 2
  try {
    analyze(LaurentSymbol{{2.0, 1.0, 0.2}}, ScalarFunction::exp());
    FAIL("expected uncertified_symbol");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::uncertified_symbol);
  }
  // a decreasing tridiagonal symbol is fine
  CHECK_NOTHROW(analyze(LaurentSymbol{{4.0, 1.0}}, ScalarFunction::exp()));
  // log is undefined where g hits zero or below
  CHECK_THROWS_AS(analyze(LaurentSymbol{{1.0, -1.0}}, ScalarFunction::log()), Error);
}

TEST_CASE("closed-form case dispatch", "[closedform]") {
  auto an = analyze(a2, ScalarFunction::exp());
  const Index n = 30, m = 6;
  for (Index s = 1; s <= n; ++s)
    for (Index t = 1; t <= n; ++t) {
      const double v = element_r2(an, n, s, t, m);
      CHECK(std::isfinite(v));
      CHECK(v == element_r2(an, n, n + 1 - s, n + 1 - t, m));
      CHECK(v == element_r2(an, n, t, s, m));
      if (std::abs(s - t) > m) CHECK(v == 0.0);
    }
  CHECK(element_r2(an, n, 12, 14, m) == an.a_term(12, 14));
  CHECK(element_r2(an, n, 2, 5, m) == an.corner_term(2, 5));
  CHECK(element_r2(an, n, 29, 26, m) == an.corner_term(2, 5));
  CHECK(element_r2(an, n, m, m + 3, m) == an.corner_term(m, m + 3));
  CHECK_THROWS_AS(element_r2(an, n, 0, 1, m), Error);
  CHECK_THROWS_AS(element_r2(an, n, 1, 1, 0), Error);

  // tridiagonal symbol: the generic formula degenerates to the Toeplitz-minus-Hankel limit
  auto an1 = analyze(a1, ScalarFunction::exp());
  for (Index s : {3, 10})
    for (Index t : {s, s + 2})
      CHECK(an1.a_term(s, t) == Catch::Approx(tridiag_element(-1.0, 4.0, ScalarFunction::exp(), s, t)).epsilon(1e-11));
  CHECK(an1.corner_term(2, 3) == an1.a_term(2, 3));
}

TEST_CASE("closed-form matrices match dense functions", "[closedform]") {
  auto id = analyze(a2, ScalarFunction::polynomial({0.0, 1.0}));
  const Index mid = choose_m(id, 1e-12).m();
  Dense tid = closedform_matrix(id, 100, mid);
  Dense t100 = a2.matrix(100).to_dense();
  for (Index i = 0; i < 100; ++i)
    for (Index j = std::max<Index>(0, i - 2); j <= std::min<Index>(99, i + 2); ++j)
      CHECK(std::abs(tid(i, j) - t100(i, j)) < 1e-10);

  auto an = analyze(a2, ScalarFunction::exp());
  Dense approx = closedform_matrix(an, 100, 40);
  CHECK(norm2(approx - dense_f(a2, 100, exp_fn)) <= 1e-6);
  CHECK(closedform_matrix(an, 100, 40, ExecPolicy::serial()) == approx);

  // error falls with n and is small by n = 100
  auto ai = analyze(a2, ScalarFunction::inv_sqrt());
  double last = 0.0;
  for (Index n : {60, 80, 100}) {
    const double err = norm2(closedform_matrix(ai, n, std::min<Index>(40, n)) - dense_f(a2, n, inv_sqrt_fn));
    if (n > 60) CHECK(err <= 2.0 * last + 1e-13);
    last = err;
  }
  CHECK(last <= 1e-6);
}

TEST_CASE("choosing the cut-off", "[closedform]") {
  auto an = analyze(a2, ScalarFunction::exp());
  const auto c = choose_m(an, 1e-8);
  CHECK(c.m() == std::max({c.m0, c.m1, c.m2}));
  CHECK(c.m0 > 0);
  const double rq = an.max_f() * an.max_q();
  CHECK(2.0 * rq * std::exp(-static_cast<double>(c.m0) * an.delta0()) <= 1e-8 / 6.0);
  CHECK(2.0 * rq * std::exp(-static_cast<double>(c.m0 - 1) * an.delta0()) > 1e-8 / 6.0);
  const auto half = choose_m(an, 0.5e-8);
  CHECK(half.m0 - c.m0 <= static_cast<Index>(std::ceil(std::log(2.0) / an.delta0())));
  CHECK(half.m() >= c.m());

  const Index n = 120;
  Dense approx = closedform_matrix(an, n, c.m());
  CHECK(norm2(approx - dense_f(a2, n, exp_fn)) <= 1e-7);

  auto c1 = choose_m(analyze(a1, ScalarFunction::exp()), 1e-8);
  CHECK(c1.m0 == 0);
  CHECK(c1.m1 == 0);
  CHECK(c1.m() == c1.m2);
  CHECK_THROWS_AS(choose_m(an, 0.0), Error);
}
