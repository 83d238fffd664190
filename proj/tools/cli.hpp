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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diagfun/error.hpp"
#include "diagfun/matstore.hpp"

namespace diagfun::cli {

enum ExitCode { ok = 0, usage = 1, input = 2, numerical = 3 };

ExitCode exit_code(Errc code);

/// Matrix produced by --mtx or --gen; `toeplitz` is set for Toeplitz inputs.
struct Input {
  DiagMatrix a;
  std::optional<ToeplitzMatrix> toeplitz;
  std::string label;
};

/// kron-laplacian:n, toeplitz:c|r[|n], tridiag:b,c,n, banded-random:n,m,seed,
/// circulant:v0,...,vq,n, toeplitz-random:n,seed
Input generate(const std::string& spec);
Input load(const std::string& mtx_path, const std::string& generator);

/// "7", "5:100" or "5:5:100"
std::vector<long> parse_range(const std::string& spec);

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diagfun::cli
