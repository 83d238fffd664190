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

#include "diagfun/error.hpp"

namespace diagfun {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::out_of_range: return "index out of range";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::invalid_partition: return "invalid partition";
    case Errc::unsupported_kernel: return "unsupported kernel";
    case Errc::non_hermitian: return "non-Hermitian input";
    case Errc::domain_error: return "function undefined on spectrum";
    case Errc::mm_bad_header: return "malformed Matrix Market header";
    case Errc::mm_not_square: return "Matrix Market matrix is not square";
    case Errc::mm_index_out_of_bounds: return "Matrix Market index out of bounds";
    case Errc::mm_bad_entry: return "malformed Matrix Market entry";
    case Errc::io_error: return "I/O error";
    case Errc::quadrature_failure: return "quadrature did not converge";
    case Errc::uncertified_symbol: return "symbol failed monotonicity certificate";
    case Errc::ill_conditioned: return "ill-conditioned root multiset";
    case Errc::dense_fallback_advised: return "dense fallback advised";
  }
  return "unknown error";
}

}  // namespace diagfun
