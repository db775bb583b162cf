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

#include "blockagg/hardness.h"

#include "blockagg/aggregator.h"
#include "blockagg/errors.h"

namespace blockagg {

namespace {

CostModel GadgetModel(std::int64_t n, std::int64_t fixed_cost) {
  std::vector<double> costs;
  costs.reserve(static_cast<std::size_t>(n));
  for (std::int64_t x = 1; x <= n; ++x) {
    costs.push_back(static_cast<double>(fixed_cost + x * x));
  }
  return CostModel(1, std::move(costs));
}

std::int64_t Sum(const std::vector<std::int64_t>& set) {
  if (set.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "3-PARTITION set is empty");
  }
  std::int64_t n = 0;
  for (std::int64_t x : set) {
    if (x < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "3-PARTITION members must be positive integers");
    }
    n += x;
  }
  return n;
}

}  // namespace

HardnessInstance BuildHardnessInstance(const std::vector<std::int64_t>& set) {
  const std::int64_t n = Sum(set);
  if (n % 3 != 0) {
    throw Error(ErrorCode::kInvalidGadget,
                "sum " + std::to_string(n) +
                    " is not divisible by 3, so n^2/9 is not integral");
  }
  const std::int64_t third = n / 3;
  const std::int64_t fixed_cost = third * third;
  return HardnessInstance{set, n, fixed_cost, 6 * fixed_cost,
                          GadgetModel(n, fixed_cost)};
}

HardnessVerdict CheckHardnessInstance(const HardnessInstance& instance) {
  AggregationPlan plan =
      SolveExactUnequal(BlockSet(instance.set), instance.model);
  HardnessVerdict verdict;
  verdict.optimum = plan.total_cost;
  // Every table entry is an integer well below 2^53, so the sum is exact.
  verdict.is_yes =
      verdict.optimum == static_cast<double>(instance.yes_threshold);
  verdict.witness = std::move(plan);
  return verdict;
}

}  // namespace blockagg
