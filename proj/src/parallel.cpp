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

#include "diagfun/parallel.hpp"

#include <omp.h>

namespace diagfun {

int ExecPolicy::resolved() const {
  if (threads > 0) return threads;
  return omp_get_max_threads();
}

namespace detail {

void run_parallel(int threads, Index count, void (*body)(void*, Index), void* ctx) {
  std::exception_ptr first;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (Index t = 0; t < count; ++t) {
    {
      std::lock_guard<std::mutex> lock(guard);
      if (first) continue;
    }
    try {
      body(ctx, t);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace detail
}  // namespace diagfun
