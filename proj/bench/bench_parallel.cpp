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


// Serial (threads = 1) against parallel (threads = 0, all cores) runs of the
// engines that distribute independent dense solves.

#include <benchmark/benchmark.h>

#include "diagfun/approx.hpp"
#include "diagfun/banded.hpp"
#include "diagfun/closedform.hpp"
#include "diagfun/toepdisp.hpp"

using namespace diagfun;

namespace {

ExecPolicy policy(const benchmark::State& state) { return ExecPolicy{static_cast<int>(state.range(0))}; }

DiagMatrix laplacian_1d(Index n) {
  DiagMatrix a(n);
  a.set_diagonal(0, Vector::Constant(n, 2.0));
  a.set_diagonal(-1, Vector::Constant(n - 1, -1.0));
  a.set_diagonal(1, Vector::Constant(n - 1, -1.0));
  return a;
}

void BM_funm_approx(benchmark::State& state) {
  auto a = kron_sum_laplacian(20);
  for (auto _ : state)
    benchmark::DoNotOptimize(funm_approx(a, ScalarFunction::inv(), 6, Index(32), policy(state)));
}

void BM_trace_approx(benchmark::State& state) {
  auto a = kron_sum_laplacian(30);
  for (auto _ : state)
    benchmark::DoNotOptimize(trace_approx(a, ScalarFunction::log(), 10, policy(state)).value);
}

void BM_banded_funm(benchmark::State& state) {
  auto a = laplacian_1d(1000);
  for (auto _ : state)
    benchmark::DoNotOptimize(banded_funm(a, ScalarFunction::exp(), 12, -1, policy(state)));
}

void BM_toeplitz_funm(benchmark::State& state) {
  Vector c = Vector::Zero(1100), r = Vector::Zero(1100);
  c(0) = r(0) = -2.0;
  c(1) = r(1) = 1.0;
  ToeplitzMatrix t(c, r);
  ToeplitzOptions opt;
  opt.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_funm(t, ScalarFunction::exp(), 12, opt));
}

void BM_closedform_matrix(benchmark::State& state) {
  auto an = analyze(LaurentSymbol{{2.0, -1.0, 0.2}}, ScalarFunction::exp());
  for (auto _ : state) benchmark::DoNotOptimize(closedform_matrix(an, 200, 40, policy(state)));
}

}  // namespace

BENCHMARK(BM_funm_approx)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_approx)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_banded_funm)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_toeplitz_funm)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_closedform_matrix)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
