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

#include "blockagg/calibration.h"

#include <cmath>
#include <random>
#include <sstream>

#include "blockagg/aggregator.h"
#include "blockagg/errors.h"
#include "blockagg/lp_generator.h"
#include "gtest/gtest.h"

namespace blockagg {
namespace {

constexpr double kMs = 1e-3;

CalibrationRecord RecordFromTable(const std::vector<double>& table,
                                  std::int64_t step = 1) {
  CalibrationRecord record;
  record.repeats = 1;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::int64_t size = static_cast<std::int64_t>(i + 1) * step;
    record.grid.push_back(size);
    record.samples.push_back({size, {table[i]}});
  }
  return record;
}

TEST(RunCalibrationTest, SyntheticLinearMedians) {
  ProbeSpec spec;
  spec.synthetic = {5 * kMs, 2 * kMs, 0, 0};
  const std::vector<std::int64_t> grid{1, 2, 3, 4, 5};
  CalibrationOptions options;
  options.repeats = 5;
  const CalibrationRecord record = RunCalibration(spec, grid, options);
  ASSERT_FALSE(record.failure.has_value());
  ASSERT_EQ(record.samples.size(), 5u);
  for (const SizeSamples& entry : record.samples) {
    ASSERT_EQ(entry.seconds.size(), 5u);
    for (double t : entry.seconds) EXPECT_GT(t, 0);
    const double expected = (5 + 2 * static_cast<double>(entry.size)) * kMs;
    EXPECT_NEAR(ReduceSamples(entry.seconds, Statistic::kMedian), expected,
                0.2 * expected);
  }
}

TEST(RunCalibrationTest, SingleSizeGrid) {
  ProbeSpec spec;
  spec.synthetic = {1 * kMs, 0, 0, 0};
  const std::vector<std::int64_t> grid{3};
  CalibrationOptions options;
  options.repeats = 2;
  options.warmups = 0;
  const CalibrationRecord record = RunCalibration(spec, grid, options);
  ASSERT_EQ(record.samples.size(), 1u);
  EXPECT_EQ(record.samples[0].size, 3);
  EXPECT_EQ(record.grid, grid);
  EXPECT_FALSE(record.timestamp.empty());
}

TEST(RunCalibrationTest, FailingCommandIsAnnotated) {
  ProbeSpec spec;
  spec.mode = ProbeMode::kExternalCommand;
  spec.command = "exit 3";
  const std::vector<std::int64_t> grid{1, 2};
  const CalibrationRecord record = RunCalibration(spec, grid);
  ASSERT_TRUE(record.failure.has_value());
  EXPECT_EQ(record.failure->size, 1);
  EXPECT_NE(record.failure->message.find("3"), std::string::npos);
  EXPECT_TRUE(record.samples.empty());
}

TEST(RunCalibrationTest, FailureMidGridKeepsEarlierSamples) {
  ProbeSpec spec;
  spec.mode = ProbeMode::kExternalCommand;
  spec.command = "test {size} -lt 3";
  const std::vector<std::int64_t> grid{1, 2, 3, 4};
  CalibrationOptions options;
  options.repeats = 2;
  const CalibrationRecord record = RunCalibration(spec, grid, options);
  ASSERT_TRUE(record.failure.has_value());
  EXPECT_EQ(record.failure->size, 3);
  ASSERT_EQ(record.samples.size(), 2u);
  for (const auto& entry : record.samples) EXPECT_EQ(entry.seconds.size(), 2u);
}

TEST(RunCalibrationTest, CommandReceivesLpFile) {
  ProbeSpec spec;
  spec.mode = ProbeMode::kExternalCommand;
  spec.command = "grep -q '^Subject To' {lp_file_path}";
  const std::vector<std::int64_t> grid{1, 2};
  CalibrationOptions options;
  options.repeats = 1;
  const CalibrationRecord record = RunCalibration(spec, grid, options);
  EXPECT_FALSE(record.failure.has_value());
  EXPECT_EQ(record.samples.size(), 2u);
}

TEST(RunCalibrationTest, RejectsBadInput) {
  ProbeSpec spec;
  const std::vector<std::int64_t> empty;
  EXPECT_THROW(RunCalibration(spec, empty), Error);
  const std::vector<std::int64_t> zero{0, 1};
  EXPECT_THROW(RunCalibration(spec, zero), Error);
  const std::vector<std::int64_t> unsorted{2, 1};
  EXPECT_THROW(RunCalibration(spec, unsorted), Error);
  CalibrationOptions options;
  options.repeats = 0;
  const std::vector<std::int64_t> grid{1};
  EXPECT_THROW(RunCalibration(spec, grid, options), Error);
  spec.mode = ProbeMode::kExternalCommand;
  EXPECT_THROW(RunCalibration(spec, grid), Error);
}

TEST(ReduceSamplesTest, Statistics) {
  const std::vector<double> v{3, 1, 2, 10};
  EXPECT_EQ(ReduceSamples(v, Statistic::kMedian), 2.5);
  EXPECT_EQ(ReduceSamples(v, Statistic::kMean), 4);
  EXPECT_EQ(ReduceSamples(v, Statistic::kMax), 10);
  EXPECT_THROW(ReduceSamples(std::vector<double>{}, Statistic::kMean), Error);
}

TEST(FitModelTest, QuadraticRecordIsConvex) {
  std::vector<double> table;
  for (int x = 1; x <= 12; ++x) table.push_back((9 + x * x) * kMs);
  const CostModel model = FitModel(RecordFromTable(table));
  EXPECT_EQ(model.curvature()->kind, CurvatureKind::kConvex);
  EXPECT_EQ(model.unit(), "s");
}

TEST(FitModelTest, ConstantProbeFullyAggregates) {
  const CostModel model = FitModel(RecordFromTable({2, 2, 2, 2, 2, 2}));
  EXPECT_EQ(model.curvature()->kind, CurvatureKind::kLinear);
  EXPECT_EQ(SolveEqual(6, model).group_sums, (std::vector<std::int64_t>{6}));
}

TEST(FitModelTest, NoisyLinearWithTinyEpsFallsBackToDp) {
  const CostModel model =
      FitModel(RecordFromTable({7.0, 9.3, 10.8, 13.4, 14.7, 17.2}));
  EXPECT_EQ(model.curvature()->kind, CurvatureKind::kGeneral);
  const AggregationPlan plan = SolveEqual(6, model);
  EXPECT_EQ(plan.solver_path, SolverPath::kDp);
}

TEST(FitModelTest, StatisticSelectsEntries) {
  CalibrationRecord record;
  record.samples = {{1, {1, 2, 9}}, {2, {2, 3, 4}}, {3, {3, 4, 5}}};
  FitOptions options;
  options.statistic = Statistic::kMax;
  EXPECT_EQ(FitModel(record, options).Eval(1), 9);
  options.statistic = Statistic::kMedian;
  EXPECT_EQ(FitModel(record, options).Eval(1), 2);
}

TEST(FitModelTest, BlockSizeGrid) {
  FitOptions options;
  options.block_size = 4;
  const CostModel model = FitModel(RecordFromTable({1, 2, 3}, 4), options);
  EXPECT_EQ(model.block_size(), 4);
  EXPECT_EQ(model.EvalSize(8), 2);
  options.block_size = 3;
  try {
    FitModel(RecordFromTable({1, 2, 3}, 4), options);
    FAIL() << "expected grid mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridMismatch);
  }
}

TEST(FitModelTest, GapsRequireInterpolation) {
  CalibrationRecord record;
  record.samples = {{1, {1}}, {2, {2}}, {5, {8}}};
  try {
    FitModel(record);
    FAIL() << "expected grid gap";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridGap);
  }
  FitOptions options;
  options.interpolate_gaps = true;
  const CostModel model = FitModel(record, options);
  EXPECT_EQ(model.max_blocks(), 5);
  EXPECT_EQ(model.Eval(3), 4);
  EXPECT_EQ(model.Eval(4), 6);
  EXPECT_EQ(model.interpolated(), (std::vector<std::int64_t>{3, 4}));
  record.samples = {{2, {2}}, {3, {3}}};
  EXPECT_THROW(FitModel(record, options), Error);
}

TEST(LpGeneratorTest, DeterministicAndWellFormed) {
  const std::string a = GenerateLp(3, {}, 42);
  EXPECT_EQ(a, GenerateLp(3, {}, 42));
  EXPECT_NE(a, GenerateLp(3, {}, 43));
  for (const char* section : {"Minimize", "Subject To", "Bounds", "End"}) {
    EXPECT_NE(a.find(section), std::string::npos) << section;
  }
  std::istringstream in(a);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.find(" c") == 0 && line.find(':') != std::string::npos) ++rows;
  }
  EXPECT_EQ(rows, 12);
}

}  // namespace
}  // namespace blockagg
