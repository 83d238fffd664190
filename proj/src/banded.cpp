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

#include "diagfun/banded.hpp"

#include <cassert>
#include <numbers>

#include "diagfun/error.hpp"

namespace diagfun {

namespace {

Interval clip(Index lo, Index hi, Index n) { return {std::max<Index>(lo, 1), std::min(hi, n)}; }

}  // namespace

BandedPlan plan(Index n, Index m, int k) {
  if (n < 1) throw Error(Errc::invalid_argument, "plan: n must be >= 1");
  if (m < 0) throw Error(Errc::invalid_argument, "plan: m must be >= 0");
  if (k < 1) throw Error(Errc::invalid_argument, "plan: k must be >= 1");
  BandedPlan p;
  p.n = n;
  p.m = m;
  p.k = k;
  const Index km = static_cast<Index>(k) * m;
  p.l = 2 * km + 1;
  assert((p.l - 1) % 2 == 0);
  p.r_max = (n + p.l - 1) / p.l;
  for (Index r = 1; r <= p.r_max; ++r) {
    p.i1.push_back(clip((r - 1) * p.l + 1, r * p.l, n));
    if (r == p.r_max) break;
    p.i2.push_back(clip((r - 1) * p.l + km + 1, r * p.l + km, n));
    p.i3.push_back(clip((r - 1) * p.l + km + 1, r * p.l, n));
    p.i4.push_back(clip(r * p.l + 1, r * p.l + km, n));
  }
  Index w = 0, e = 0;
  for (Index r = 0; r < static_cast<Index>(p.i2.size()); ++r) {
    w += p.i2[static_cast<std::size_t>(r)].length();
    e += std::max<Index>(0, p.i3[static_cast<std::size_t>(r)].length()) +
         std::max<Index>(0, p.i4[static_cast<std::size_t>(r)].length());
  }
  p.s1 = km;
  p.s2 = p.i2.empty() ? 0 : n - km - w;
  p.s3 = p.i2.empty() ? 0 : n - km - e;
  return p;
}

FunmApprox banded_funm(const DiagMatrix& a, const ScalarFunction& f, int k, Index m,
                       const ExecPolicy& exec) {
  const DiagSet pattern = nd(a);
  const Index n = a.n();
  Index width = 0;
  for (const auto& run : pattern.runs()) width = std::max({width, -run.lo, run.hi});
  if (m < 0) m = width;
  if (width > m)
    throw Error(Errc::invalid_argument, "banded_funm: matrix has bandwidth " +
                                            std::to_string(width) + " > m = " +
                                            std::to_string(m));
  FunmApprox out;
  out.report = base_report(a, f, k);
  const BandedPlan p = plan(n, m, k);
  const Index km = static_cast<Index>(k) * m;

  struct Block {
    Interval idx;
    double sign;
    Dense value;
  };
  std::vector<Block> blocks;
  for (const auto& b : p.i1) blocks.push_back({b, 1.0, {}});
  for (const auto& b : p.i2) blocks.push_back({b, 1.0, {}});
  for (const auto& b : p.i3) blocks.push_back({b, -1.0, {}});
  for (const auto& b : p.i4) blocks.push_back({b, -1.0, {}});
  std::erase_if(blocks, [](const Block& b) { return b.idx.length() <= 0; });

  const bool herm = out.report.hermitian;
  for_each_task(exec, static_cast<Index>(blocks.size()), [&](Index t) {
    Block& b = blocks[static_cast<std::size_t>(t)];
    const IndexSet s = IndexSet::range(n, b.idx.lo, b.idx.hi);
    b.value = apply(extract(a, s, s), f, herm);
  });

  out.value = DiagMatrix(n);
  for (Index d = -std::min(km, n - 1); d <= std::min(km, n - 1); ++d) out.value.diagonal(d);
  for (const auto& b : blocks) {
    out.report.record_submatrix(b.idx.length());
    const Index len = b.idx.length();
    for (Index q = 0; q < len; ++q)
      for (Index pr = 0; pr < len; ++pr) {
        const Index d = q - pr;
        if (std::abs(d) > km) continue;
        const Index i = b.idx.lo + pr;
        out.value.diagonal(d)(std::min(i, i + d) - 1) += b.sign * b.value(pr, q);
      }
  }
  out.report.bound = 4 * (1 + std::numbers::sqrt2) * out.report.proxy;
  return out;
}

}  // namespace diagfun
