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

#include <stdexcept>
#include <string>

namespace diagfun {

/// Error categories. The CLI maps them onto exit codes.
enum class Errc {
  dimension_mismatch,
  out_of_range,
  invalid_argument,
  invalid_partition,
  unsupported_kernel,
  non_hermitian,
  domain_error,
  mm_bad_header,
  mm_not_square,
  mm_index_out_of_bounds,
  mm_bad_entry,
  io_error,
  quadrature_failure,
  uncertified_symbol,
  ill_conditioned,
  dense_fallback_advised,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace diagfun
