// Copyright 2026 The blockagg Authors
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

#ifndef BLOCKAGG_LP_GENERATOR_H_
#define BLOCKAGG_LP_GENERATOR_H_

#include <cstdint>
#include <string>

namespace blockagg {

// An LP of size x has x * rows_per_unit dense rows over x * cols_per_unit
// columns. Coefficients are integers drawn uniformly from
// [-coefficient_range, coefficient_range].
struct LpGeneratorOptions {
  std::int64_t rows_per_unit = 4;
  std::int64_t cols_per_unit = 4;
  std::int64_t coefficient_range = 100;
  std::int64_t variable_upper_bound = 100;

  bool operator==(const LpGeneratorOptions&) const = default;
};

// Renders a feasible, bounded LP in CPLEX LP text format:
//
//   \ blockagg generated LP: size=<x> seed=<seed>
//   Minimize
//    obj: <c1> x1 + <c2> x2 ...
//   Subject To
//    c1: <a11> x1 + ... <= <b1>
//   Bounds
//    0 <= x1 <= <U>
//   End
//
// Every column is boxed in [0, U] and each right-hand side is chosen so that
// x = floor(U/2) satisfies its row, so the LP is feasible and bounded. The output
// is a pure function of (size, options, seed).
std::string GenerateLp(std::int64_t size, const LpGeneratorOptions& options,
                       std::uint64_t seed);

}  // namespace blockagg

#endif  // BLOCKAGG_LP_GENERATOR_H_
