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

#include "blockagg/block_set.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "blockagg/errors.h"

namespace blockagg {

BlockSet::BlockSet(std::vector<std::int64_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "block set is empty");
  }
  for (std::int64_t s : sizes_) {
    if (s < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "block sizes must be >= 1, got " + std::to_string(s));
    }
    total_ += s;
  }
}

BlockSet BlockSet::Uniform(std::int64_t count, std::int64_t block_size) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "block count must be >= 1");
  }
  return BlockSet(std::vector<std::int64_t>(static_cast<std::size_t>(count),
                                            block_size));
}

std::optional<EqualSize> BlockSet::equal_size() const {
  const std::int64_t first = sizes_.front();
  if (std::any_of(sizes_.begin(), sizes_.end(),
                  [first](std::int64_t s) { return s != first; })) {
    return std::nullopt;
  }
  return EqualSize{first, static_cast<std::int64_t>(sizes_.size())};
}

std::string_view SolverPathName(SolverPath path) {
  switch (path) {
    case SolverPath::kDp: return "dp";
    case SolverPath::kConvex: return "convex";
    case SolverPath::kConcave: return "concave";
    case SolverPath::kLinear: return "linear";
    case SolverPath::kExact: return "exact";
    case SolverPath::kNone: return "none";
  }
  return "none";
}

SolverPath ParseSolverPath(std::string_view name) {
  for (SolverPath p : {SolverPath::kDp, SolverPath::kConvex,
                       SolverPath::kConcave, SolverPath::kLinear,
                       SolverPath::kExact, SolverPath::kNone}) {
    if (SolverPathName(p) == name) return p;
  }
  throw Error(ErrorCode::kParse,
              "unknown solver path '" + std::string(name) + "'");
}

double SubproblemCost(std::span<const std::int64_t> group_sums,
                      const CostModel& model) {
  std::vector<std::int64_t> sorted(group_sums.begin(), group_sums.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double total = 0.0;
  for (std::int64_t y : sorted) total += model.EvalSize(y);
  return total;
}

double EvaluatePlan(const AggregationPlan& plan, const CostModel& model) {
  return SubproblemCost(plan.group_sums, model);
}

void ValidatePlan(const AggregationPlan& plan) {
  if (plan.groups.size() != plan.group_sums.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "plan has " + std::to_string(plan.groups.size()) +
                    " groups but " + std::to_string(plan.group_sums.size()) +
                    " group sums");
  }
  std::vector<int> seen(plan.blocks.size(), 0);
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    if (plan.groups[g].empty()) {
      throw Error(ErrorCode::kInvalidArgument, "plan stores an empty group");
    }
    std::int64_t sum = 0;
    for (std::size_t idx : plan.groups[g]) {
      if (idx >= plan.blocks.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "group references block " + std::to_string(idx) +
                        " of " + std::to_string(plan.blocks.size()));
      }
      if (seen[idx]++ != 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "block " + std::to_string(idx) + " is in two groups");
      }
      sum += plan.blocks[idx];
    }
    if (sum != plan.group_sums[g]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "group " + std::to_string(g) + " sums to " +
                      std::to_string(sum) + " but records " +
                      std::to_string(plan.group_sums[g]));
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "block " + std::to_string(i) + " is not assigned");
    }
  }
}

std::vector<std::int64_t> SubproblemCounts(const AggregationPlan& plan) {
  std::vector<std::int64_t> counts(plan.blocks.size() + 1, 0);
  for (const auto& group : plan.groups) ++counts[group.size()];
  return counts;
}

AggregationPlan PlanFromCounts(std::span<const std::int64_t> counts,
                               std::int64_t block_size, const CostModel& model,
                               SolverPath path) {
  std::int64_t num_blocks = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    num_blocks += static_cast<std::int64_t>(i) * counts[i];
  }
  AggregationPlan plan;
  plan.blocks.assign(static_cast<std::size_t>(num_blocks), block_size);
  plan.solver_path = path;
  std::size_t next = 0;
  for (std::size_t i = counts.size(); i-- > 1;) {
    for (std::int64_t c = 0; c < counts[i]; ++c) {
      std::vector<std::size_t> group(i);
      for (std::size_t& idx : group) idx = next++;
      plan.groups.push_back(std::move(group));
      plan.group_sums.push_back(static_cast<std::int64_t>(i) * block_size);
    }
  }
  plan.total_cost = EvaluatePlan(plan, model);
  return plan;
}

std::vector<std::int64_t> DistinctGroupSums(const AggregationPlan& plan) {
  std::vector<std::int64_t> sums = plan.group_sums;
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

}  // namespace blockagg
