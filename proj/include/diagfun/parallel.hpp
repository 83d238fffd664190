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

#include <exception>
#include <mutex>

#include "diagfun/intervals.hpp"

namespace diagfun {

/// Thread budget for the independent dense solves of an engine.
///
/// threads == 1 runs the plain serial loop, which is the reference the
/// parallel path is tested against. threads == 0 uses every available core.
struct ExecPolicy {
  int threads = 0;

  static ExecPolicy serial() { return ExecPolicy{1}; }
  int resolved() const;
};

namespace detail {
void run_parallel(int threads, Index count, void (*body)(void*, Index), void* ctx);
}

/// Calls fn(t) for t in [0, count). Output written by distinct tasks must be
/// disjoint; the first exception thrown by any task is rethrown.
template <typename Fn>
void for_each_task(const ExecPolicy& policy, Index count, Fn&& fn) {
  const int threads = policy.resolved();
  if (threads <= 1 || count <= 1) {
    for (Index t = 0; t < count; ++t) fn(t);
    return;
  }
  detail::run_parallel(
      threads, count, [](void* ctx, Index t) { (*static_cast<Fn*>(ctx))(t); },
      static_cast<void*>(&fn));
}

}  // namespace diagfun
