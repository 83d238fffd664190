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

#include <cmath>
#include <random>

#include "diagfun/densefun.hpp"
#include "diagfun/error.hpp"
#include "oracles.hpp"

using namespace diagfun;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Dense random_dense(std::mt19937& rng, Index n, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  Dense a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = scale * g(rng);
  return a;
}

Dense random_orthogonal(std::mt19937& rng, Index n) {
  Eigen::HouseholderQR<Dense> qr(random_dense(rng, n, 1.0));
  return qr.householderQ() * Dense::Identity(n, n);
}

double maxabs(const Dense& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("expm basics", "[densefun]") {
  CHECK(maxabs(expm(Dense::Zero(4, 4)) - Dense::Identity(4, 4)) == 0.0);
  Dense d = Dense::Zero(3, 3);
  d.diagonal() << -1.0, 0.5, 3.0;
  Dense e = expm(d);
  for (Index i = 0; i < 3; ++i) CHECK_THAT(e(i, i), WithinRel(std::exp(d(i, i)), 1e-14));
  Dense nil(2, 2);
  nil << 0, 1, 0, 0;
  Dense want(2, 2);
  want << 1, 1, 0, 1;
  CHECK(maxabs(expm(nil) - want) < 1e-15);
  CHECK_THROWS_AS(expm(Dense::Zero(2, 3)), Error);
  Dense bad = Dense::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(expm(bad), Error);
}

TEST_CASE("expm agrees with an independent Taylor oracle", "[densefun]") {
  std::mt19937 rng(4);
  for (double scale : {0.01, 0.3, 1.0, 3.0}) {
    Dense a = random_dense(rng, 12, scale);
    Dense want = oracle::expm_taylor(a);
    CHECK(maxabs(expm(a) - want) <= 1e-12 * maxabs(want));
  }
}

TEST_CASE("expm(b) expm(-b) = I", "[densefun][property]") {
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    Dense b = random_dense(rng, 10, 1.0);
    b *= (0.5 + t) / b.norm();
    CHECK(maxabs(expm(b) * expm(-b) - Dense::Identity(10, 10)) < 1e-10);
  }
}

TEST_CASE("funm_hermitian", "[densefun]") {
  std::mt19937 rng(6);
  Dense b = random_dense(rng, 8, 1.0);
  b = (b + b.transpose()).eval();
  CHECK(maxabs(funm_hermitian(b, ScalarFunction::polynomial({0, 1})) - b) < 1e-12);

  Dense d = Dense::Zero(4, 4);
  d.diagonal() << 6, 8, 8, 10;
  CHECK_THAT(funm_hermitian(d, ScalarFunction::inv()).trace(), WithinAbs(31.0 / 60.0, 1e-15));

  Dense spd = b * b.transpose() + Dense::Identity(8, 8);
  Dense r = funm_hermitian(spd, ScalarFunction::sqrt());
  CHECK(maxabs(r * r - spd) < 1e-10);
  Dense l = funm_hermitian(spd, ScalarFunction::log());
  CHECK(maxabs(funm_hermitian(l, ScalarFunction::exp()) - spd) < 1e-10 * maxabs(spd));
  Dense is = funm_hermitian(spd, ScalarFunction::inv_sqrt());
  CHECK(maxabs(is * spd * is - Dense::Identity(8, 8)) < 1e-10);

  Dense ns = random_dense(rng, 4, 1.0);
  CHECK_THROWS_AS(funm_hermitian(ns, ScalarFunction::exp()), Error);
  Dense neg = -Dense::Identity(3, 3);
  try {
    funm_hermitian(neg, ScalarFunction::log());
    FAIL("log of a negative definite matrix must fail");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::domain_error);
  }
}

TEST_CASE("funm_hermitian commutes with orthogonal similarity", "[densefun][property]") {
  std::mt19937 rng(7);
  for (int t = 0; t < 5; ++t) {
    Dense b = random_dense(rng, 9, 0.5);
    b = (b + b.transpose()).eval();
    Dense q = random_orthogonal(rng, 9);
    auto f = ScalarFunction::exp();
    Dense lhs = funm_hermitian(q.transpose() * b * q, f);
    Dense rhs = q.transpose() * funm_hermitian(b, f) * q;
    CHECK(maxabs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("polyvalm", "[densefun]") {
  std::mt19937 rng(8);
  Dense b = random_dense(rng, 8, 1.0);
  std::vector<double> one{1.0}, x{0.0, 1.0};
  CHECK(maxabs(polyvalm(one, b) - Dense::Identity(8, 8)) == 0.0);
  CHECK(maxabs(polyvalm(x, b) - b) == 0.0);
  std::vector<double> c{0.3, -1.0, 0.5, 2.0, -0.25};
  Dense want = oracle::polyval_dense(c, b);
  CHECK(maxabs(polyvalm(c, b) - want) < 1e-12 * maxabs(want));
  std::vector<double> c2{1.0, 0.0, -2.0, 0.5, 0.0};
  std::vector<double> sum(5);
  for (int i = 0; i < 5; ++i) sum[i] = 2 * c[i] - 3 * c2[i];
  CHECK(maxabs(polyvalm(sum, b) - (2 * polyvalm(c, b) - 3 * polyvalm(c2, b))) < 1e-10);
}

TEST_CASE("apply dispatch", "[densefun]") {
  std::mt19937 rng(9);
  Dense ns = random_dense(rng, 5, 0.5);
  CHECK(maxabs(apply(ns, ScalarFunction::exp(-1.0), false) - expm(-ns)) < 1e-14);
  CHECK_THROWS_AS(apply(ns, ScalarFunction::log(), false), Error);
  CHECK_FALSE(kernel_available(ScalarFunction::sqrt(), false));
  CHECK(kernel_available(ScalarFunction::sqrt(), true));
  auto p = ScalarFunction::parse("poly:1,2,3@0.5");
  std::vector<double> c{1, 1, 0.75};
  CHECK(maxabs(apply(ns, p, false) - polyvalm(c, ns)) < 1e-14);
}

TEST_CASE("ScalarFunction parsing and evaluation", "[densefun]") {
  CHECK(ScalarFunction::parse("exp@-1")(2.0) == std::exp(-2.0));
  CHECK(ScalarFunction::parse("inv-sqrt")(4.0) == 0.5);
  CHECK(ScalarFunction::parse("poly:1,0,2").degree() == 2);
  CHECK(ScalarFunction::parse("poly:1,0,0").degree() == 0);
  CHECK(ScalarFunction::exp().degree() == -1);
  CHECK_THROWS_AS(ScalarFunction::parse("cosh"), Error);
  CHECK_THROWS_AS(ScalarFunction::parse("exp@x"), Error);
  CHECK(ScalarFunction::parse("log").defined_on(1, 2));
  CHECK_FALSE(ScalarFunction::parse("log").defined_on(0, 2));
  CHECK_FALSE(ScalarFunction::inv().defined_on(-1, 1));
  auto z = ScalarFunction::exp()(std::complex<double>(0.0, std::numbers::pi));
  CHECK_THAT(z.real(), WithinAbs(-1.0, 1e-15));
  CHECK(ScalarFunction::parse("exp@-1").name() == "exp@-1");
}

TEST_CASE("cheb_approx", "[densefun]") {
  auto p0 = cheb_approx(ScalarFunction::exp(), -1, 1, 0);
  CHECK_THAT(p0.cheb[0], WithinAbs(1.0, 1e-15));
  CHECK(p0.error >= std::exp(1.0) - 1 - 1e-12);

  auto poly = ScalarFunction::polynomial({1, -2, 0.5, 3});
  auto p3 = cheb_approx(poly, -0.7, 2.3, 3);
  CHECK(p3.error <= 1e-12);
  for (int i = 0; i < 4; ++i) CHECK_THAT(p3.monomial[i], WithinAbs(poly.coeffs()[i], 1e-11));
  CHECK(approximation_error(poly, SpectralEnclosure::interval(-1, 1, SpectralEnclosure::Source::exact), 3) == 0.0);

  double prev = 1e300;
  for (int k = 0; k <= 14; ++k) {
    auto p = cheb_approx(ScalarFunction::exp(), 2, 6, k);
    CHECK(p.error <= 2 * prev);
    prev = p.error;
    for (double x : {2.0, 3.3, 6.0}) {
      double mono = 0, pw = 1;
      for (double c : p.monomial) {
        mono += c * pw;
        pw *= x;
      }
      CHECK_THAT(mono, WithinAbs(cheb_eval(p, x), 1e-9 * std::exp(6.0)));
    }
  }
  CHECK(prev < 1e-9);
  CHECK_THROWS_AS(cheb_approx(ScalarFunction::exp(), 0, 1, -1), Error);
}

TEST_CASE("spectral enclosures", "[densefun]") {
  auto b = kron_sum_laplacian(6);
  auto e = enclosure(b);
  CHECK(e.kind == SpectralEnclosure::Kind::interval);
  CHECK(e.source == SpectralEnclosure::Source::gershgorin);
  CHECK(e.lo >= 0.0);
  CHECK(e.hi <= 16.0);
  CHECK(e.lo <= 4.0);
  CHECK(e.hi >= 12.0);

  DiagMatrix d(4);
  Vector v(4);
  v << 3, -1, 2, 5;
  d.set_diagonal(0, v);
  auto ed = enclosure(d);
  CHECK(ed.source == SpectralEnclosure::Source::exact);
  CHECK(ed.lo == -1.0);
  CHECK(ed.hi == 5.0);
  auto ez = enclosure(DiagMatrix(3));
  CHECK(ez.lo == 0.0);
  CHECK(ez.hi == 0.0);

  std::mt19937 rng(10);
  for (int t = 0; t < 10; ++t) {
    Dense a = random_dense(rng, 12, 1.0);
    auto en = enclosure(DiagMatrix::from_dense(a));
    CHECK(en.kind == SpectralEnclosure::Kind::disk);
    Eigen::EigenSolver<Dense> es(a);
    CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= en.radius);
    Dense s = a + a.transpose();
    auto es2 = enclosure(DiagMatrix::from_dense(s));
    Eigen::SelfAdjointEigenSolver<Dense> ss(s);
    CHECK(es2.lo <= ss.eigenvalues().minCoeff());
    CHECK(es2.hi >= ss.eigenvalues().maxCoeff());
  }
}

TEST_CASE("disk approximation error bounds the Taylor remainder", "[densefun]") {
  auto enc = SpectralEnclosure::disk(0.7, SpectralEnclosure::Source::norm_bound);
  for (int k : {0, 3, 8}) {
    double bound = approximation_error(ScalarFunction::exp(), enc, k);
    double tail = 0, term = 1;
    for (int j = 1; j <= 60; ++j) {
      term *= 0.7 / j;
      if (j > k) tail += term;
    }
    CHECK(bound >= tail);
  }
  CHECK(std::isinf(approximation_error(ScalarFunction::log(), enc, 4)));
  CHECK(crouzeix_q(true) == 1.0);
  CHECK_THAT(crouzeix_q(false), WithinAbs(1 + std::sqrt(2.0), 1e-15));
}
