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

#include "blockagg/serialization.h"

#include <fstream>

#include "blockagg/errors.h"

namespace blockagg {

using nlohmann::json;

namespace {

// nlohmann throws its own exception types; surface them as parse errors.
template <typename Fn>
auto Parsing(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

std::string_view ProbeModeName(ProbeMode mode) {
  return mode == ProbeMode::kSynthetic ? "synthetic" : "external-command";
}

ProbeMode ParseProbeMode(const std::string& name) {
  if (name == "synthetic") return ProbeMode::kSynthetic;
  if (name == "external-command") return ProbeMode::kExternalCommand;
  throw Error(ErrorCode::kParse, "unknown probe mode '" + name + "'");
}

}  // namespace

json ToJson(const CostModel& model) {
  json samples = json::array();
  const auto& marks = model.interpolated();
  for (std::int64_t i = 1; i <= model.max_blocks(); ++i) {
    json sample = {{"i", i}, {"cost", model.Eval(i)}};
    if (std::binary_search(marks.begin(), marks.end(), i)) {
      sample["interpolated"] = true;
    }
    samples.push_back(std::move(sample));
  }
  // "curvature" is informational; loading reclassifies from the samples.
  json curvature = nullptr;
  if (model.curvature()) {
    curvature = std::string(CurvatureName(model.curvature()->kind));
  }
  return {{"block_size", model.block_size()},
          {"unit", model.unit()},
          {"curvature", std::move(curvature)},
          {"statistic", std::string(StatisticName(model.statistic()))},
          {"eps", model.eps()},
          {"samples", std::move(samples)}};
}

CostModel CostModelFromJson(const json& doc) {
  return Parsing("cost model", [&] {
    std::vector<double> costs;
    std::vector<std::int64_t> marks;
    for (const json& sample : doc.at("samples")) {
      const auto i = sample.at("i").get<std::int64_t>();
      if (i != static_cast<std::int64_t>(costs.size()) + 1) {
        throw Error(ErrorCode::kParse,
                    "cost model samples must cover i = 1, 2, ... without "
                    "gaps; found i = " +
                        std::to_string(i));
      }
      costs.push_back(sample.at("cost").get<double>());
      if (sample.value("interpolated", false)) marks.push_back(i);
    }
    return CostModel(doc.at("block_size").get<std::int64_t>(),
                     std::move(costs), doc.value("eps", kDefaultCurvatureEps),
                     doc.value("unit", std::string("s")),
                     ParseStatistic(doc.value("statistic", std::string("median"))),
                     std::move(marks));
  });
}

json ToJson(const AggregationPlan& plan) {
  return {{"blocks", plan.blocks},
          {"model_ref", plan.model_ref},
          {"groups", plan.groups},
          {"group_sums", plan.group_sums},
          {"total_cost", plan.total_cost},
          {"solver_path", std::string(SolverPathName(plan.solver_path))}};
}

AggregationPlan PlanFromJson(const json& doc) {
  return Parsing("plan", [&] {
    AggregationPlan plan;
    plan.blocks = doc.at("blocks").get<std::vector<std::int64_t>>();
    plan.model_ref = doc.value("model_ref", std::string());
    plan.groups = doc.at("groups").get<std::vector<std::vector<std::size_t>>>();
    plan.group_sums = doc.at("group_sums").get<std::vector<std::int64_t>>();
    plan.total_cost = doc.at("total_cost").get<double>();
    plan.solver_path =
        ParseSolverPath(doc.at("solver_path").get<std::string>());
    ValidatePlan(plan);
    return plan;
  });
}

json ToJson(const PpuSchedule& schedule) {
  json plans = json::array();
  for (const auto& plan : schedule.plans) plans.push_back(ToJson(plan));
  return {{"m", schedule.m},
          {"assignments", schedule.assignments},
          {"plans", std::move(plans)},
          {"per_ppu_serial_time", schedule.per_ppu_serial_time},
          {"wall_clock", schedule.wall_clock}};
}

PpuSchedule ScheduleFromJson(const json& doc) {
  return Parsing("schedule", [&] {
    PpuSchedule schedule;
    schedule.m = doc.at("m").get<std::int64_t>();
    schedule.assignments =
        doc.at("assignments").get<std::vector<std::vector<std::int64_t>>>();
    for (const json& plan : doc.at("plans")) {
      schedule.plans.push_back(PlanFromJson(plan));
    }
    schedule.per_ppu_serial_time =
        doc.at("per_ppu_serial_time").get<std::vector<double>>();
    schedule.wall_clock = doc.at("wall_clock").get<double>();
    const auto m = static_cast<std::size_t>(schedule.m);
    if (schedule.m < 1 || schedule.assignments.size() != m ||
        schedule.plans.size() != m || schedule.per_ppu_serial_time.size() != m) {
      throw Error(ErrorCode::kParse,
                  "schedule lists must each have m = " +
                      std::to_string(schedule.m) + " entries");
    }
    return schedule;
  });
}

json ToJson(const CalibrationRecord& record) {
  const ProbeSpec& p = record.probe;
  json probe = {
      {"mode", std::string(ProbeModeName(p.mode))},
      {"synthetic",
       {{"fixed", p.synthetic.fixed},
        {"linear", p.synthetic.linear},
        {"quadratic", p.synthetic.quadratic},
        {"noise", p.synthetic.noise}}},
      {"command", p.command},
      {"lp",
       {{"rows_per_unit", p.lp.rows_per_unit},
        {"cols_per_unit", p.lp.cols_per_unit},
        {"coefficient_range", p.lp.coefficient_range},
        {"variable_upper_bound", p.lp.variable_upper_bound}}},
      {"seed", p.seed}};
  json raw = json::array();
  for (const SizeSamples& s : record.samples) {
    raw.push_back({{"size", s.size}, {"seconds", s.seconds}});
  }
  json failure = nullptr;
  if (record.failure) {
    failure = {{"size", record.failure->size},
               {"message", record.failure->message}};
  }
  return {{"probe", std::move(probe)},
          {"grid", record.grid},
          {"repeats", record.repeats},
          {"warmups", record.warmups},
          {"raw_times", std::move(raw)},
          {"statistic", std::string(StatisticName(record.statistic))},
          {"timestamp", record.timestamp},
          {"platform_note", record.platform_note},
          {"failure", std::move(failure)}};
}

CalibrationRecord CalibrationRecordFromJson(const json& doc) {
  return Parsing("calibration record", [&] {
    CalibrationRecord record;
    const json& p = doc.at("probe");
    record.probe.mode = ParseProbeMode(p.at("mode").get<std::string>());
    const json& syn = p.at("synthetic");
    record.probe.synthetic = {syn.at("fixed").get<double>(),
                              syn.at("linear").get<double>(),
                              syn.at("quadratic").get<double>(),
                              syn.at("noise").get<double>()};
    record.probe.command = p.at("command").get<std::string>();
    const json& lp = p.at("lp");
    record.probe.lp = {lp.at("rows_per_unit").get<std::int64_t>(),
                       lp.at("cols_per_unit").get<std::int64_t>(),
                       lp.at("coefficient_range").get<std::int64_t>(),
                       lp.at("variable_upper_bound").get<std::int64_t>()};
    record.probe.seed = p.at("seed").get<std::uint64_t>();
    record.grid = doc.at("grid").get<std::vector<std::int64_t>>();
    record.repeats = doc.at("repeats").get<std::int64_t>();
    record.warmups = doc.at("warmups").get<std::int64_t>();
    for (const json& s : doc.at("raw_times")) {
      SizeSamples entry{s.at("size").get<std::int64_t>(),
                        s.at("seconds").get<std::vector<double>>()};
      if (static_cast<std::int64_t>(entry.seconds.size()) != record.repeats) {
        throw Error(ErrorCode::kParse,
                    "size " + std::to_string(entry.size) + " has " +
                        std::to_string(entry.seconds.size()) +
                        " timings, expected " + std::to_string(record.repeats));
      }
      for (double t : entry.seconds) {
        if (!(t > 0.0)) {
          throw Error(ErrorCode::kParse, "timings must be positive");
        }
      }
      record.samples.push_back(std::move(entry));
    }
    record.statistic = ParseStatistic(doc.at("statistic").get<std::string>());
    record.timestamp = doc.at("timestamp").get<std::string>();
    record.platform_note = doc.at("platform_note").get<std::string>();
    const json& failure = doc.at("failure");
    if (!failure.is_null()) {
      record.failure = ProbeFailure{failure.at("size").get<std::int64_t>(),
                                    failure.at("message").get<std::string>()};
    }
    return record;
  });
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return Parsing(path.c_str(), [&] { return json::parse(in); });
}

void WriteJsonFile(const std::string& path, const json& doc) {
  std::ofstream out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

}  // namespace blockagg
