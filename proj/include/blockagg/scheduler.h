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

#ifndef BLOCKAGG_SCHEDULER_H_
#define BLOCKAGG_SCHEDULER_H_

#include <cstdint>
#include <vector>

#include "blockagg/block_set.h"
#include "blockagg/cost_model.h"

namespace blockagg {

// Longest-processing-time list scheduling: blocks in descending size order,
// each to the currently least-loaded unit (lowest index on ties). Returns
// the block sizes given to each of the m units; some may be empty.
std::vector<std::vector<std::int64_t>> DistributeLpt(const BlockSet& blocks,
                                                     std::int64_t m);

struct PpuSchedule {
  std::int64_t m = 0;
  std::vector<std::vector<std::int64_t>> assignments;
  std::vector<AggregationPlan> plans;  // idle units get an empty plan
  std::vector<double> per_ppu_serial_time;
  double wall_clock = 0.0;

  bool operator==(const PpuSchedule&) const = default;
};

// Distributes with LPT, then aggregates each unit's blocks independently.
// Throws Error(kInstanceTooLarge) when a unit ends up with too many blocks
// of unequal size for the exact solver.
PpuSchedule Schedule(const BlockSet& blocks, const CostModel& model,
                     std::int64_t m, bool force_dp = false);

}  // namespace blockagg

#endif  // BLOCKAGG_SCHEDULER_H_
