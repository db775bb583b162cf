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

// JSON documents for models, plans, schedules and calibration records.
//
// cost model:  {"block_size": 1, "unit": "s", "statistic": "median",
//               "eps": 1e-9, "samples": [{"i": 1, "cost": 10.0}, ...]}
//              samples filled by interpolation carry "interpolated": true;
//              a "curvature" field is written for readers and ignored on load.
// plan:        {"blocks": [...], "model_ref": "...", "groups": [[0, 1], ...],
//               "group_sums": [...], "total_cost": 24.0,
//               "solver_path": "dp"|"convex"|"concave"|"linear"|"exact"}
//              group members are 0-based block indices.
// schedule:    {"m": 2, "assignments": [[sizes], ...], "plans": [plan, ...],
//              "per_ppu_serial_time": [...], "wall_clock": 18.0}
//              idle units have an empty plan with solver_path "none".
// calibration: {"probe": {...}, "grid": [...], "repeats": 7, "warmups": 1,
//               "raw_times": [{"size": 1, "seconds": [...]}, ...],
//               "statistic": "median", "timestamp": "...",
//               "platform_note": "...", "failure": null|{"size", "message"}}
//
// Doubles are written with round-trip precision, so load(save(x)) == x.
// Malformed documents raise Error(kParse).

#ifndef BLOCKAGG_SERIALIZATION_H_
#define BLOCKAGG_SERIALIZATION_H_

#include <string>

#include "blockagg/block_set.h"
#include "blockagg/calibration.h"
#include "blockagg/cost_model.h"
#include "blockagg/scheduler.h"
#include "json.hpp"

namespace blockagg {

nlohmann::json ToJson(const CostModel& model);
nlohmann::json ToJson(const AggregationPlan& plan);
nlohmann::json ToJson(const PpuSchedule& schedule);
nlohmann::json ToJson(const CalibrationRecord& record);

CostModel CostModelFromJson(const nlohmann::json& doc);
AggregationPlan PlanFromJson(const nlohmann::json& doc);
PpuSchedule ScheduleFromJson(const nlohmann::json& doc);
CalibrationRecord CalibrationRecordFromJson(const nlohmann::json& doc);

// Error(kIo) when the file cannot be opened or written.
nlohmann::json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const nlohmann::json& doc);

}  // namespace blockagg

#endif  // BLOCKAGG_SERIALIZATION_H_
