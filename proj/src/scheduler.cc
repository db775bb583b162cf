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

#include "blockagg/scheduler.h"

#include <algorithm>
#include <functional>

#include "blockagg/aggregator.h"
#include "blockagg/errors.h"

namespace blockagg {

std::vector<std::vector<std::int64_t>> DistributeLpt(const BlockSet& blocks,
                                                     std::int64_t m) {
  if (m < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "number of processing units must be >= 1");
  }
  std::vector<std::int64_t> sizes(blocks.sizes().begin(),
                                  blocks.sizes().end());
  std::stable_sort(sizes.begin(), sizes.end(), std::greater<>());
  std::vector<std::vector<std::int64_t>> units(static_cast<std::size_t>(m));
  std::vector<std::int64_t> load(static_cast<std::size_t>(m), 0);
  for (std::int64_t size : sizes) {
    const auto target = static_cast<std::size_t>(
        std::min_element(load.begin(), load.end()) - load.begin());
    units[target].push_back(size);
    load[target] += size;
  }
  return units;
}

PpuSchedule Schedule(const BlockSet& blocks, const CostModel& model,
                     std::int64_t m, bool force_dp) {
  PpuSchedule schedule;
  schedule.m = m;
  schedule.assignments = DistributeLpt(blocks, m);
  for (const auto& unit : schedule.assignments) {
    AggregationPlan plan;
    if (!unit.empty()) plan = SolveBlocks(BlockSet(unit), model, force_dp);
    schedule.per_ppu_serial_time.push_back(plan.total_cost);
    schedule.wall_clock = std::max(schedule.wall_clock, plan.total_cost);
    schedule.plans.push_back(std::move(plan));
  }
  return schedule;
}

}  // namespace blockagg
