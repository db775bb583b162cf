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

// Reduction from 3-PARTITION (split X into three equal-sum subsets) to
// unequal-size aggregation. With n = sum(X) and P(x) = n^2/9 + x^2 the
// per-unit cost P(x)/x is minimal exactly at x = n/3, so the optimum equals
// 3 * P(n/3) = 2n^2/3 iff X splits into three subsets of sum n/3, and is
// strictly larger otherwise.

#ifndef BLOCKAGG_HARDNESS_H_
#define BLOCKAGG_HARDNESS_H_

#include <cstdint>
#include <vector>

#include "blockagg/block_set.h"
#include "blockagg/cost_model.h"

namespace blockagg {

struct HardnessInstance {
  std::vector<std::int64_t> set;
  std::int64_t n = 0;
  std::int64_t fixed_cost = 0;     // n^2 / 9
  std::int64_t yes_threshold = 0;  // 2 n^2 / 3
  CostModel model;                 // P(x) = n^2/9 + x^2 on x = 1..n
};

// Throws Error(kInvalidGadget) when sum(X) is not divisible by 3 and
// Error(kInvalidArgument) for an empty set or nonpositive members.
HardnessInstance BuildHardnessInstance(const std::vector<std::int64_t>& set);

struct HardnessVerdict {
  bool is_yes = false;
  double optimum = 0.0;
  AggregationPlan witness;
};

// Solves the gadget exactly; YES iff the optimum hits the threshold.
HardnessVerdict CheckHardnessInstance(const HardnessInstance& instance);

}  // namespace blockagg

#endif  // BLOCKAGG_HARDNESS_H_
