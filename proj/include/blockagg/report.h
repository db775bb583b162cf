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

#ifndef BLOCKAGG_REPORT_H_
#define BLOCKAGG_REPORT_H_

#include <string>

#include "blockagg/block_set.h"
#include "blockagg/cost_model.h"
#include "blockagg/scheduler.h"

namespace blockagg {

// One row per processing unit, `width` columns spanning the wall clock.
// Subproblems are drawn back to back in plan order, alternating '#' and '=',
// and the idle tail is '.':
//
//   PPU 0 |##########========..| busy 18 idle 2
std::string RenderGantt(const PpuSchedule& schedule, const CostModel& model,
                        int width = 60);

// "ppu,group,start,end" with one line per subproblem.
std::string RenderScheduleCsv(const PpuSchedule& schedule,
                              const CostModel& model);

// Shortest decimal that reads back to the same double.
std::string FormatNumber(double value);

}  // namespace blockagg

#endif  // BLOCKAGG_REPORT_H_
