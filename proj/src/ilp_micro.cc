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

#include "blockagg/ilp_micro.h"

#include <algorithm>

#include "blockagg/errors.h"

namespace blockagg {

namespace {

struct Search {
  const MicroIlp& ilp;
  std::vector<std::int64_t> bounds;
  std::vector<std::int64_t> current;
  std::optional<MicroIlpSolution> best;

  void Visit(std::size_t var, std::int64_t remaining, double partial) {
    const std::size_t last = ilp.weights.size() - 1;
    if (var == last) {
      const std::int64_t w = ilp.weights[last];
      if (remaining % w != 0) return;
      const std::int64_t x = remaining / w;
      if (x > bounds[last]) return;
      current[last] = x;
      const double objective = partial + ilp.costs[last] * static_cast<double>(x);
      // Enumeration runs in lexicographic order, so strict improvement keeps
      // the smallest assignment among ties.
      if (!best || objective < best->objective) {
        best = MicroIlpSolution{current, objective};
      }
      return;
    }
    const std::int64_t w = ilp.weights[var];
    const std::int64_t hi = std::min(bounds[var], remaining / w);
    for (std::int64_t x = 0; x <= hi; ++x) {
      current[var] = x;
      Visit(var + 1, remaining - w * x,
            partial + ilp.costs[var] * static_cast<double>(x));
    }
    current[var] = 0;
  }
};

}  // namespace

std::optional<MicroIlpSolution> SolveMicroIlp(const MicroIlp& ilp) {
  const std::size_t dim = ilp.weights.size();
  if (dim > kMaxMicroIlpDimension) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "micro ILP supports at most 3 variables, got " +
                    std::to_string(dim));
  }
  if (ilp.costs.size() != dim) {
    throw Error(ErrorCode::kInvalidArgument,
                "costs and weights lengths differ");
  }
  if (!ilp.upper_bounds.empty() && ilp.upper_bounds.size() != dim) {
    throw Error(ErrorCode::kInvalidArgument,
                "upper_bounds and weights lengths differ");
  }
  if (ilp.target < 0) {
    throw Error(ErrorCode::kInvalidArgument, "target must be >= 0");
  }
  for (std::size_t v = 0; v < dim; ++v) {
    if (ilp.weights[v] <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be positive");
    }
    if (!ilp.upper_bounds.empty() && ilp.upper_bounds[v] < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "upper bounds must be nonnegative");
    }
  }
  if (dim == 0) {
    if (ilp.target != 0) return std::nullopt;
    return MicroIlpSolution{};
  }

  Search search{ilp, {}, std::vector<std::int64_t>(dim, 0), std::nullopt};
  search.bounds.resize(dim);
  for (std::size_t v = 0; v < dim; ++v) {
    const std::int64_t natural = ilp.target / ilp.weights[v];
    search.bounds[v] = ilp.upper_bounds.empty()
                           ? natural
                           : std::min(natural, ilp.upper_bounds[v]);
  }
  search.Visit(0, ilp.target, 0.0);
  return search.best;
}

}  // namespace blockagg
