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

// Optimal aggregation of diagonal blocks into subproblems that are solved
// one after another on a single processing unit.
//
// For `count` blocks of identical size s the problem is an unbounded
// knapsack with an equality constraint: pick how many subproblems of each
// size i*s to form so that the sizes add up to count*s and the summed
// solve time is minimal. SolveDp handles any table in O(count^2). When the
// table is convex an optimal plan uses at most two sizes k*s and (k+1)*s,
// when it is concave at most three sizes s, k*s and count*s, and when it is
// linear either one subproblem or no aggregation at all is optimal; the
// corresponding solvers exploit that. SolveEqual picks a solver from the
// model's curvature.
//
// Blocks of unequal size make the problem strongly NP-hard, so
// SolveExactUnequal is an exhaustive search limited to kMaxExactBlocks.

#ifndef BLOCKAGG_AGGREGATOR_H_
#define BLOCKAGG_AGGREGATOR_H_

#include <cstdint>

#include "blockagg/block_set.h"
#include "blockagg/cost_model.h"

namespace blockagg {

inline constexpr std::size_t kMaxExactBlocks = 13;

// Minimizes over all partitions of `count` identical blocks. Ties in the
// recurrence prefer the largest step, i.e. fewer and larger subproblems.
// Throws Error(kOutOfRange) if the model grid is shorter than count.
AggregationPlan SolveDp(std::int64_t count, const CostModel& model);

struct ConvexOptions {
  // Return no aggregation when i_star == 1 and full aggregation when
  // i_star == count without scanning.
  bool use_trivial_cases = true;
  // With r = i_star + 1 >= 3 and count > r^2 - r - 1, scan only
  // k in {r - 2, r - 1, r}; otherwise every k in [1, count - 1].
  bool use_constant_branch = true;
};

// Requires a Convex model (Error(kWrongPath) otherwise).
AggregationPlan SolveConvex(std::int64_t count, const CostModel& model,
                            const ConvexOptions& options = {});

// Requires a Concave model (Error(kWrongPath) otherwise).
AggregationPlan SolveConcave(std::int64_t count, const CostModel& model);

// Requires a Linear model (Error(kWrongPath) otherwise). The intercept
// a = P(s) - s * (P(2s) - P(s)) / s decides: a >= 0 gives one subproblem,
// a < 0 gives one subproblem per block.
AggregationPlan SolveLinear(std::int64_t count, const CostModel& model);

// Dispatches on the model's curvature; General or unclassified models (and
// force_dp) go to SolveDp.
AggregationPlan SolveEqual(std::int64_t count, const CostModel& model,
                           bool force_dp = false);

// Exhaustive search over every set partition of the blocks. Among optimal
// plans the one whose group sums, sorted descending, are lexicographically
// smallest wins. Throws Error(kInstanceTooLarge) above kMaxExactBlocks,
// Error(kGridMismatch) for sizes off the model grid and Error(kOutOfRange)
// when the blocks together exceed the grid.
AggregationPlan SolveExactUnequal(const BlockSet& blocks,
                                  const CostModel& model);

// Equal-size blocks go through SolveEqual on a re-gridded model, anything
// else through SolveExactUnequal.
AggregationPlan SolveBlocks(const BlockSet& blocks, const CostModel& model,
                            bool force_dp = false);

}  // namespace blockagg

#endif  // BLOCKAGG_AGGREGATOR_H_
