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

#include <vector>

#include "diagfun/approx.hpp"

namespace diagfun {

/// Overlapping block layout for an m-banded matrix and degree k.
///
/// Blocks I1 tile {1..n} in runs of l = 2km+1; the I2 blocks are the I1
/// blocks shifted by km, and I3, I4 split each I2 block at the I1 seam.
/// All sets are clipped to {1..n}, so the last blocks may be short.
struct BandedPlan {
  Index n = 0;
  Index m = 0;
  int k = 0;
  Index l = 0;    // #S_k = 2km + 1
  Index r_max = 0;
  std::vector<Interval> i1;  // r = 1..r_max
  std::vector<Interval> i2;  // r = 1..r_max-1
  std::vector<Interval> i3;
  std::vector<Interval> i4;
  Index s1 = 0;
  Index s2 = 0;
  Index s3 = 0;
};

BandedPlan plan(Index n, Index m, int k);

/// Overlapping-block scheme: f(Q) + blkdiag(Z1, f(W), Z2) − blkdiag(Z1, f(E), Z3),
/// truncated to bandwidth km. Bound 4(1+√2)·proxy.
///
/// m < 0 takes the bandwidth from ND(a).
FunmApprox banded_funm(const DiagMatrix& a, const ScalarFunction& f, int k, Index m = -1,
                       const ExecPolicy& exec = {});

}  // namespace diagfun
