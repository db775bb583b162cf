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

#ifndef BLOCKAGG_ILP_MICRO_H_
#define BLOCKAGG_ILP_MICRO_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace blockagg {

inline constexpr std::size_t kMaxMicroIlpDimension = 3;

// minimize   sum costs[v] * x[v]
// subject to sum weights[v] * x[v] == target,
//            0 <= x[v] <= upper_bounds[v], x integer.
// An empty upper_bounds means target / weights[v] for every variable.
struct MicroIlp {
  std::vector<double> costs;
  std::vector<std::int64_t> weights;
  std::int64_t target = 0;
  std::vector<std::int64_t> upper_bounds;
};

struct MicroIlpSolution {
  std::vector<std::int64_t> assignment;
  double objective = 0.0;
};

// Exact: enumerates every variable but the last, which the equality forces.
// Ties go to the lexicographically smallest assignment. Returns nullopt when
// infeasible. Throws Error(kUnsupportedDimension) above three variables and
// Error(kInvalidArgument) on malformed input.
std::optional<MicroIlpSolution> SolveMicroIlp(const MicroIlp& ilp);

}  // namespace blockagg

#endif  // BLOCKAGG_ILP_MICRO_H_
