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

#include "blockagg/cli.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "blockagg/aggregator.h"
#include "blockagg/errors.h"
#include "blockagg/hardness.h"
#include "blockagg/oracle.h"
#include "blockagg/report.h"
#include "blockagg/scheduler.h"
#include "blockagg/serialization.h"

namespace blockagg::cli {

namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::int64_t ParseInt(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid " + std::string(what) + " '" +
                     std::string(text) + "'");
  }
  return value;
}

double ParseDouble(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string copy(text);
    const double value = std::stod(copy, &used);
    if (used != copy.size() || !std::isfinite(value)) throw std::exception();
    return value;
  } catch (const std::exception&) {
    throw UsageError("invalid " + std::string(what) + " '" +
                     std::string(text) + "'");
  }
}

void RequirePositive(const std::vector<std::int64_t>& values,
                     std::string_view what) {
  for (std::int64_t v : values) {
    if (v < 1) {
      throw UsageError(std::string(what) + " must be >= 1, got " +
                       std::to_string(v));
    }
  }
}

void CheckOutputPath(const std::string& path) {
  if (path.empty()) return;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw UsageError("output directory does not exist: " + parent.string());
  }
}

std::string JoinInts(const std::vector<std::int64_t>& values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) text += ' ';
    text += std::to_string(values[i]);
  }
  return text;
}

std::string RecordPathFor(const std::string& model_path) {
  const std::string suffix = ".json";
  if (model_path.size() > suffix.size() &&
      model_path.compare(model_path.size() - suffix.size(), suffix.size(),
                         suffix) == 0) {
    return model_path.substr(0, model_path.size() - suffix.size()) +
           ".record.json";
  }
  return model_path + ".record.json";
}

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::optional<double> eps;
  bool verbose = false;
};

struct BlockFlags {
  std::string blocks;
  std::string sizes;

  BlockSet Resolve() const {
    if (blocks.empty() == sizes.empty()) {
      throw UsageError("give exactly one of --blocks or --sizes");
    }
    return BlockSet(blocks.empty() ? ParseSizeList(sizes)
                                   : ParseBlockSpec(blocks));
  }
};

CostModel LoadModel(const std::string& path, const GlobalFlags& global) {
  CostModel model = CostModelFromJson(ReadJsonFile(path));
  if (!global.eps) return model;
  const auto costs = model.costs();
  return CostModel(model.block_size(),
                   std::vector<double>(costs.begin(), costs.end()),
                   *global.eps, model.unit(), model.statistic(),
                   model.interpolated());
}

std::string CurvatureText(const CostModel& model) {
  if (!model.curvature()) return "unclassified (fewer than 3 samples)";
  return std::string(CurvatureName(model.curvature()->kind)) + " (eps " +
         FormatNumber(model.curvature()->tolerance_eps) + ")";
}

void PrintPlan(const AggregationPlan& plan, const CostModel& model,
               std::ostream& out) {
  out << "solver path: " << SolverPathName(plan.solver_path) << '\n';
  out << "subproblems: " << plan.groups.size() << " (sizes "
      << JoinInts(plan.group_sums) << ")\n";
  out << "total cost: " << FormatNumber(plan.total_cost) << ' ' << model.unit()
      << '\n';
}

// Compares a plan against the brute-force oracles when the instance is small
// enough. Returns false on disagreement.
bool Verify(const BlockSet& blocks, const AggregationPlan& plan,
            const CostModel& model, std::ostream& out) {
  constexpr std::int64_t kMaxPartitionOracle = 40;
  constexpr std::size_t kMaxSetPartitionOracle = 12;
  std::optional<double> oracle_cost;
  if (const auto equal = blocks.equal_size();
      equal && equal->count <= kMaxPartitionOracle &&
      equal->block_size % model.block_size() == 0) {
    oracle_cost =
        BestPartition(equal->count,
                      model.Coarsen(equal->block_size / model.block_size()))
            .cost;
  } else if (blocks.size() <= kMaxSetPartitionOracle) {
    oracle_cost = BestSetPartition(blocks.sizes(), model).cost;
  }
  if (!oracle_cost) {
    out << "verify: skipped (instance too large for the oracle)\n";
    return true;
  }
  const bool agree = std::abs(*oracle_cost - plan.total_cost) <=
                     1e-12 * std::max(1.0, std::abs(*oracle_cost));
  out << "verify: " << (agree ? "ok" : "MISMATCH") << " (oracle cost "
      << FormatNumber(*oracle_cost) << ")\n";
  return agree;
}

int CmdCalibrate(const GlobalFlags& global, const std::string& synthetic,
                 const std::string& command, const std::string& grid_text,
                 const CalibrationOptions& options, std::int64_t block_size,
                 bool interpolate, const std::string& out_path,
                 std::string record_path, std::ostream& out,
                 std::ostream& err) {
  if (synthetic.empty() == command.empty()) {
    throw UsageError("give exactly one of --synthetic or --command");
  }
  const std::vector<std::int64_t> grid = ParseGrid(grid_text);
  if (block_size < 1) throw UsageError("--block-size must be >= 1");
  if (record_path.empty()) record_path = RecordPathFor(out_path);
  CheckOutputPath(out_path);
  CheckOutputPath(record_path);

  ProbeSpec spec;
  spec.seed = global.seed;
  if (!synthetic.empty()) {
    spec.mode = ProbeMode::kSynthetic;
    spec.synthetic = ParseSyntheticSpec(synthetic);
  } else {
    spec.mode = ProbeMode::kExternalCommand;
    spec.command = command;
  }

  const CalibrationRecord record = RunCalibration(spec, grid, options);
  WriteJsonFile(record_path, ToJson(record));
  out << "calibration record: " << record_path << '\n';
  if (record.failure) {
    err << "probe failed at size " << record.failure->size << ": "
        << record.failure->message << '\n';
    return kExitDomainError;
  }

  FitOptions fit;
  fit.statistic = options.statistic;
  fit.eps = global.eps.value_or(kDefaultCurvatureEps);
  fit.block_size = block_size;
  fit.interpolate_gaps = interpolate;
  const CostModel model = FitModel(record, fit);
  WriteJsonFile(out_path, ToJson(model));

  const XOpt best = model.OptimalSize();
  out << "cost model: " << out_path << '\n';
  out << "curvature: " << CurvatureText(model) << '\n';
  out << "x_opt: " << best.blocks << " block(s) = "
      << best.blocks * model.block_size() << " size units, per-unit cost "
      << FormatNumber(best.per_unit_cost) << ' ' << model.unit() << '\n';
  if (global.verbose) {
    for (std::int64_t i = 1; i <= model.max_blocks(); ++i) {
      out << "  P(" << i * model.block_size()
          << ") = " << FormatNumber(model.Eval(i)) << '\n';
    }
  }
  return kExitOk;
}

int CmdPlan(const GlobalFlags& global, const std::string& model_path,
            const BlockFlags& block_flags, const std::string& out_path,
            bool force_dp, bool verify, std::ostream& out) {
  const BlockSet blocks = block_flags.Resolve();
  CheckOutputPath(out_path);
  const CostModel model = LoadModel(model_path, global);
  AggregationPlan plan = SolveBlocks(blocks, model, force_dp);
  plan.model_ref = model_path;
  PrintPlan(plan, model, out);
  if (global.verbose) {
    out << "model curvature: " << CurvatureText(model) << '\n';
  }
  if (!out_path.empty()) {
    WriteJsonFile(out_path, ToJson(plan));
    out << "plan: " << out_path << '\n';
  }
  if (verify && !Verify(blocks, plan, model, out)) return kExitDomainError;
  return kExitOk;
}

int CmdSchedule(const GlobalFlags& global, const std::string& model_path,
                const BlockFlags& block_flags, std::int64_t ppus,
                const std::string& out_path, const std::string& csv_path,
                int width, bool force_dp, std::ostream& out) {
  const BlockSet blocks = block_flags.Resolve();
  if (ppus < 1) throw UsageError("--ppus must be >= 1");
  if (width < 1) throw UsageError("--width must be >= 1");
  CheckOutputPath(out_path);
  CheckOutputPath(csv_path);
  const CostModel model = LoadModel(model_path, global);
  PpuSchedule schedule = Schedule(blocks, model, ppus, force_dp);
  for (auto& plan : schedule.plans) plan.model_ref = model_path;
  out << RenderGantt(schedule, model, width);
  if (global.verbose) {
    for (std::size_t p = 0; p < schedule.plans.size(); ++p) {
      out << "PPU " << p << ": blocks " << JoinInts(schedule.assignments[p])
          << " -> subproblems " << JoinInts(schedule.plans[p].group_sums)
          << " via " << SolverPathName(schedule.plans[p].solver_path) << '\n';
    }
  }
  if (!out_path.empty()) {
    WriteJsonFile(out_path, ToJson(schedule));
    out << "schedule: " << out_path << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << RenderScheduleCsv(schedule, model);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + csv_path);
    out << "csv: " << csv_path << '\n';
  }
  return kExitOk;
}

int CmdHardnessDemo(const std::string& set_text, bool verify,
                    std::ostream& out) {
  const std::vector<std::int64_t> set = ParseSizeList(set_text);
  std::int64_t n = 0;
  for (std::int64_t x : set) n += x;
  if (n % 3 != 0) {
    throw UsageError("set sum " + std::to_string(n) +
                     " is not divisible by 3");
  }
  const HardnessInstance instance = BuildHardnessInstance(set);
  const HardnessVerdict verdict = CheckHardnessInstance(instance);
  out << "n = " << instance.n << '\n';
  out << "a = n^2/9 = " << instance.fixed_cost << '\n';
  out << "threshold 2n^2/3 = " << instance.yes_threshold << '\n';
  out << "optimum = " << FormatNumber(verdict.optimum) << '\n';
  out << "verdict: " << (verdict.is_yes ? "YES" : "NO") << '\n';
  out << "grouping:";
  for (std::size_t g = 0; g < verdict.witness.groups.size(); ++g) {
    out << " {";
    const auto& group = verdict.witness.groups[g];
    for (std::size_t j = 0; j < group.size(); ++j) {
      out << (j ? "," : "") << verdict.witness.blocks[group[j]];
    }
    out << "}=" << verdict.witness.group_sums[g];
  }
  out << '\n';
  if (verify) {
    const bool direct = ThreePartitionDecide(set);
    out << "verify: direct 3-partition search says "
        << (direct ? "YES" : "NO")
        << (direct == verdict.is_yes ? " (agrees)" : " (MISMATCH)") << '\n';
    if (direct != verdict.is_yes) return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace

std::vector<std::int64_t> ParseBlockSpec(std::string_view spec) {
  std::vector<std::int64_t> sizes;
  for (std::string_view term : Split(spec, ',')) {
    const std::size_t x = term.find('x');
    if (x == std::string_view::npos) {
      throw UsageError("block spec term '" + std::string(term) +
                       "' is not of the form NxS");
    }
    const std::int64_t count = ParseInt(term.substr(0, x), "block count");
    const std::int64_t size = ParseInt(term.substr(x + 1), "block size");
    if (count < 1 || size < 1) {
      throw UsageError("block count and size must be >= 1 in '" +
                       std::string(term) + "'");
    }
    sizes.insert(sizes.end(), static_cast<std::size_t>(count), size);
  }
  return sizes;
}

std::vector<std::int64_t> ParseSizeList(std::string_view list) {
  std::vector<std::int64_t> sizes;
  for (std::string_view item : Split(list, ',')) {
    sizes.push_back(ParseInt(item, "size"));
  }
  RequirePositive(sizes, "sizes");
  return sizes;
}

std::vector<std::int64_t> ParseGrid(std::string_view grid) {
  std::vector<std::int64_t> sizes;
  if (const std::size_t dots = grid.find(".."); dots != std::string_view::npos) {
    const std::int64_t lo = ParseInt(grid.substr(0, dots), "grid start");
    const std::int64_t hi = ParseInt(grid.substr(dots + 2), "grid end");
    if (lo < 1) {
      throw UsageError("grid sizes must be >= 1, got " + std::to_string(lo));
    }
    if (hi < lo) throw UsageError("grid range is empty");
    for (std::int64_t v = lo; v <= hi; ++v) sizes.push_back(v);
    return sizes;
  }
  for (std::string_view item : Split(grid, ',')) {
    sizes.push_back(ParseInt(item, "grid size"));
  }
  RequirePositive(sizes, "grid sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw UsageError("grid must be strictly ascending");
    }
  }
  return sizes;
}

SyntheticProbe ParseSyntheticSpec(std::string_view spec) {
  constexpr double kMs = 1e-3;
  SyntheticProbe probe;
  for (std::string_view item : Split(spec, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("synthetic term '" + std::string(item) +
                       "' is not key=value");
    }
    const std::string_view key = item.substr(0, eq);
    const double value = ParseDouble(item.substr(eq + 1), key);
    if (value < 0) {
      throw UsageError("synthetic term " + std::string(key) + " must be >= 0");
    }
    if (key == "fixed") {
      probe.fixed = value * kMs;
    } else if (key == "lin" || key == "linear") {
      probe.linear = value * kMs;
    } else if (key == "quad" || key == "quadratic") {
      probe.quadratic = value * kMs;
    } else if (key == "noise") {
      if (value >= 1) throw UsageError("noise must be < 1");
      probe.noise = value;
    } else {
      throw UsageError("unknown synthetic term '" + std::string(key) +
                       "' (expected fixed, lin, quad, noise)");
    }
  }
  return probe;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Optimal aggregation of diagonal blocks into LP subproblems",
               "blockagg"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  double eps_flag = kDefaultCurvatureEps;
  auto* eps_option =
      app.add_option("--eps", eps_flag,
                     "Curvature classification tolerance (relative)")
          ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", global.seed, "Seed for synthetic probes and LPs");
  app.add_flag("-v,--verbose", global.verbose, "Print extra detail");

  // calibrate
  auto* calibrate =
      app.add_subcommand("calibrate", "Time a probe and fit a cost model");
  std::string synthetic, command, grid_text, model_out, record_out;
  std::string statistic_name = "median";
  CalibrationOptions cal_options;
  std::int64_t block_size = 1;
  bool interpolate = false;
  calibrate->add_option("--synthetic", synthetic,
                        "Built-in busy probe, e.g. fixed=9,quad=1 (ms)");
  calibrate->add_option("--command", command,
                        "Probe command; {lp_file_path} and {size} expand");
  calibrate->add_option("--grid", grid_text, "Sizes, e.g. 1..12 or 1,2,4")
      ->required();
  calibrate->add_option("--repeats", cal_options.repeats, "Timed runs per size")
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--warmups", cal_options.warmups,
                        "Discarded runs per size")
      ->check(CLI::NonNegativeNumber);
  calibrate->add_option("--statistic", statistic_name, "median|mean|max")
      ->check(CLI::IsMember({"median", "mean", "max"}));
  calibrate->add_option("--block-size", block_size, "LP size of one block");
  calibrate->add_flag("--interpolate", interpolate,
                      "Fill grid gaps by linear interpolation");
  calibrate->add_option("--note", cal_options.platform_note,
                        "Free-text platform note");
  calibrate->add_option("--out", model_out, "Cost model file to write")
      ->required();
  calibrate->add_option("--record", record_out,
                        "Calibration record file (default: <out>.record.json)");

  // plan
  auto* plan = app.add_subcommand("plan", "Compute an optimal aggregation");
  std::string model_path, plan_out;
  BlockFlags plan_blocks;
  bool force_dp = false;
  bool verify = false;
  plan->add_option("--model", model_path, "Cost model file")
      ->required()
      ->check(CLI::ExistingFile);
  plan->add_option("--blocks", plan_blocks.blocks, "Equal blocks, e.g. 12x1");
  plan->add_option("--sizes", plan_blocks.sizes, "Block sizes, e.g. 2,2,5");
  plan->add_option("--out", plan_out, "Plan file to write");
  plan->add_flag("--force-dp", force_dp, "Skip curvature dispatch");
  plan->add_flag("--verify", verify, "Cross-check against brute force");

  // schedule
  auto* schedule =
      app.add_subcommand("schedule", "Spread blocks over PPUs and aggregate");
  std::string schedule_out, csv_out;
  BlockFlags schedule_blocks;
  std::int64_t ppus = 1;
  int width = 60;
  schedule->add_option("--model", model_path, "Cost model file")
      ->required()
      ->check(CLI::ExistingFile);
  schedule->add_option("--blocks", schedule_blocks.blocks,
                       "Equal blocks, e.g. 6x1");
  schedule->add_option("--sizes", schedule_blocks.sizes,
                       "Block sizes, e.g. 3,3,2,2,2");
  schedule->add_option("--ppus", ppus, "Number of processing units")
      ->required();
  schedule->add_option("--out", schedule_out, "Schedule file to write");
  schedule->add_option("--csv", csv_out, "CSV of (ppu, group, start, end)");
  schedule->add_option("--width", width, "Gantt width in columns");
  schedule->add_flag("--force-dp", force_dp, "Skip curvature dispatch");

  // hardness-demo
  auto* hardness = app.add_subcommand(
      "hardness-demo", "Decide 3-PARTITION through the aggregation gadget");
  std::string set_text;
  hardness->add_option("--set", set_text, "Multiset, e.g. 1,1,1,1,1,1,1,1,1")
      ->required();
  hardness->add_flag("--verify", verify, "Also run a direct 3-PARTITION search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kExitUsage;
  }
  if (eps_option->count() > 0) global.eps = eps_flag;

  try {
    if (calibrate->parsed()) {
      cal_options.statistic = ParseStatistic(statistic_name);
      return CmdCalibrate(global, synthetic, command, grid_text, cal_options,
                          block_size, interpolate, model_out, record_out, out,
                          err);
    }
    if (plan->parsed()) {
      return CmdPlan(global, model_path, plan_blocks, plan_out, force_dp,
                     verify, out);
    }
    if (schedule->parsed()) {
      return CmdSchedule(global, model_path, schedule_blocks, ppus,
                         schedule_out, csv_out, width, force_dp, out);
    }
    if (hardness->parsed()) return CmdHardnessDemo(set_text, verify, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace blockagg::cli
