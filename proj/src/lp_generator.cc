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

#include "blockagg/lp_generator.h"

#include <random>
#include <sstream>
#include <vector>

#include "blockagg/errors.h"

namespace blockagg {

namespace {

// Appends " + 3 x2" / " - 3 x2" style terms; zero coefficients are skipped.
void AppendTerm(std::ostringstream& out, std::int64_t coef, std::int64_t col,
                bool& first) {
  if (coef == 0) return;
  if (first) {
    out << ' ' << coef << " x" << col;
    first = false;
  } else {
    out << (coef < 0 ? " - " : " + ") << (coef < 0 ? -coef : coef) << " x"
        << col;
  }
}

}  // namespace

std::string GenerateLp(std::int64_t size, const LpGeneratorOptions& options,
                       std::uint64_t seed) {
  if (size < 1 || options.rows_per_unit < 1 || options.cols_per_unit < 1 ||
      options.coefficient_range < 1 || options.variable_upper_bound < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "LP size and generator options must be positive");
  }
  const std::int64_t rows = size * options.rows_per_unit;
  const std::int64_t cols = size * options.cols_per_unit;
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(size) * 0x9E3779B97F4A7C15ull));
  std::uniform_int_distribution<std::int64_t> coef(-options.coefficient_range,
                                                   options.coefficient_range);
  std::uniform_int_distribution<std::int64_t> slack(0,
                                                    options.coefficient_range);

  std::ostringstream out;
  out << "\\ blockagg generated LP: size=" << size << " seed=" << seed << '\n';
  out << "Minimize\n obj:";
  bool first = true;
  for (std::int64_t j = 1; j <= cols; ++j) AppendTerm(out, coef(rng), j, first);
  if (first) out << " 0 x1";
  out << "\nSubject To\n";
  for (std::int64_t i = 1; i <= rows; ++i) {
    out << " c" << i << ':';
    first = true;
    std::int64_t row_sum = 0;
    for (std::int64_t j = 1; j <= cols; ++j) {
      const std::int64_t a = coef(rng);
      row_sum += a;
      AppendTerm(out, a, j, first);
    }
    if (first) out << " 0 x1";
    // Feasible at x = floor(U/2).
    const std::int64_t half_u = options.variable_upper_bound / 2;
    out << " <= " << row_sum * half_u + slack(rng) << '\n';
  }
  out << "Bounds\n";
  for (std::int64_t j = 1; j <= cols; ++j) {
    out << " 0 <= x" << j << " <= " << options.variable_upper_bound << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace blockagg
