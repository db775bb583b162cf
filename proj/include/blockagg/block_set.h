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

#ifndef BLOCKAGG_BLOCK_SET_H_
#define BLOCKAGG_BLOCK_SET_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blockagg/cost_model.h"

namespace blockagg {

struct EqualSize {
  std::int64_t block_size = 0;
  std::int64_t count = 0;
};

// The diagonal blocks to aggregate, by LP size. Never empty.
class BlockSet {
 public:
  explicit BlockSet(std::vector<std::int64_t> sizes);
  static BlockSet Uniform(std::int64_t count, std::int64_t block_size);

  std::span<const std::int64_t> sizes() const { return sizes_; }
  std::size_t size() const { return sizes_.size(); }
  std::int64_t total() const { return total_; }
  // Present iff every block has the same size.
  std::optional<EqualSize> equal_size() const;

 private:
  std::vector<std::int64_t> sizes_;
  std::int64_t total_ = 0;
};

enum class SolverPath { kDp, kConvex, kConcave, kLinear, kExact, kNone };

std::string_view SolverPathName(SolverPath path);
SolverPath ParseSolverPath(std::string_view name);

// Assignment of blocks to subproblems. Groups hold 0-based block indices;
// empty subproblems are never stored.
struct AggregationPlan {
  std::vector<std::int64_t> blocks;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::int64_t> group_sums;
  double total_cost = 0.0;
  SolverPath solver_path = SolverPath::kNone;
  std::string model_ref;

  bool operator==(const AggregationPlan&) const = default;
};

// Sum of P over the given subproblem sizes, added largest subproblem first.
// Every solver reports its cost through this so costs are comparable bit for
// bit. Throws Error(kGridMismatch) / Error(kOutOfRange) for sizes off grid.
double SubproblemCost(std::span<const std::int64_t> group_sums,
                      const CostModel& model);

// Re-scores a plan against a model.
double EvaluatePlan(const AggregationPlan& plan, const CostModel& model);

// Throws Error(kInvalidArgument) unless the groups partition the block
// indices, no group is empty, and group_sums match the member sizes.
void ValidatePlan(const AggregationPlan& plan);

// For plans over equal-size blocks: counts[i] is the number of subproblems
// holding exactly i blocks, for i in [0, number of blocks].
std::vector<std::int64_t> SubproblemCounts(const AggregationPlan& plan);

// Builds a plan for `counts[i]` subproblems of i blocks each, all blocks of
// size `block_size`. Larger subproblems take the lower block indices.
AggregationPlan PlanFromCounts(std::span<const std::int64_t> counts,
                               std::int64_t block_size, const CostModel& model,
                               SolverPath path);

// Number of distinct subproblem sizes used by a plan, ascending.
std::vector<std::int64_t> DistinctGroupSums(const AggregationPlan& plan);

}  // namespace blockagg

#endif  // BLOCKAGG_BLOCK_SET_H_
