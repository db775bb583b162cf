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
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "blockagg/aggregator.h"
#include "blockagg/errors.h"
#include "blockagg/report.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace blockagg {
namespace {

std::vector<std::int64_t> Loads(
    const std::vector<std::vector<std::int64_t>>& assignments) {
  std::vector<std::int64_t> loads;
  for (const auto& a : assignments) {
    loads.push_back(std::accumulate(a.begin(), a.end(), std::int64_t{0}));
  }
  return loads;
}

TEST(DistributeLptTest, Examples) {
  EXPECT_EQ(Loads(DistributeLpt(BlockSet({3, 3, 2, 2, 2}), 2)),
            (std::vector<std::int64_t>{7, 5}));
  EXPECT_EQ(Loads(DistributeLpt(BlockSet({4, 4}), 2)),
            (std::vector<std::int64_t>{4, 4}));
  EXPECT_EQ(DistributeLpt(BlockSet({1, 5, 2}), 1),
            (std::vector<std::vector<std::int64_t>>{{5, 2, 1}}));
  EXPECT_THROW(DistributeLpt(BlockSet({1}), 0), Error);
}

std::int64_t OptimalMakespan(const std::vector<std::int64_t>& sizes,
                             std::int64_t m) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> loads(static_cast<std::size_t>(m), 0);
  std::function<void(std::size_t)> place = [&](std::size_t i) {
    const std::int64_t worst = *std::max_element(loads.begin(), loads.end());
    if (worst >= best) return;
    if (i == sizes.size()) {
      best = worst;
      return;
    }
    for (auto& load : loads) {
      load += sizes[i];
      place(i + 1);
      load -= sizes[i];
      if (load == 0) break;
    }
  };
  place(0);
  return best;
}

TEST(DistributeLptTest, ConservesBlocks) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> k_dist(1, 40);
  std::uniform_int_distribution<std::int64_t> size(1, 30);
  std::uniform_int_distribution<std::int64_t> m_dist(1, 8);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k_dist(rng)));
    for (auto& x : sizes) x = size(rng);
    const std::int64_t m = m_dist(rng);
    const auto assignments = DistributeLpt(BlockSet(sizes), m);
    ASSERT_EQ(static_cast<std::int64_t>(assignments.size()), m);
    std::vector<std::int64_t> merged;
    for (const auto& a : assignments) {
      merged.insert(merged.end(), a.begin(), a.end());
    }
    std::sort(merged.begin(), merged.end());
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(merged, sizes);
  }
}

TEST(DistributeLptTest, WithinGrahamBoundOfOptimum) {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> k_dist(1, 10);
  std::uniform_int_distribution<std::int64_t> size(1, 20);
  std::uniform_int_distribution<std::int64_t> m_dist(1, 4);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k_dist(rng)));
    for (auto& x : sizes) x = size(rng);
    const std::int64_t m = m_dist(rng);
    const auto loads = Loads(DistributeLpt(BlockSet(sizes), m));
    const double lpt =
        static_cast<double>(*std::max_element(loads.begin(), loads.end()));
    const double opt = static_cast<double>(OptimalMakespan(sizes, m));
    const double bound = 4.0 / 3.0 - 1.0 / (3.0 * static_cast<double>(m));
    EXPECT_LE(lpt, bound * opt + 1e-9) << "instance " << t;
  }
}

TEST(ScheduleTest, SixUnitBlocksOnTwoUnits) {
  const PpuSchedule s = Schedule(BlockSet::Uniform(6, 1), testing::Quad9(), 2);
  EXPECT_EQ(s.wall_clock, 18);
  ASSERT_EQ(s.plans.size(), 2u);
  for (const auto& plan : s.plans) {
    EXPECT_EQ(plan.group_sums, (std::vector<std::int64_t>{3}));
  }
}

TEST(ScheduleTest, IdleUnits) {
  const CostModel mixed(1, {10, 12, 30, 35});
  const PpuSchedule s = Schedule(BlockSet({1}), mixed, 4);
  EXPECT_EQ(s.wall_clock, 10);
  EXPECT_EQ(s.per_ppu_serial_time, (std::vector<double>{10, 0, 0, 0}));
  EXPECT_EQ(s.plans[3].solver_path, SolverPath::kNone);
}

TEST(ScheduleTest, SingleUnitMatchesDp) {
  const CostModel mixed(1, {10, 12, 30, 35});
  EXPECT_EQ(Schedule(BlockSet::Uniform(4, 1), mixed, 1).wall_clock, 24);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    const CostModel model(1, testing::RandomTable(rng, 30));
    const std::int64_t count = 1 + t;
    EXPECT_EQ(Schedule(BlockSet::Uniform(count, 1), model, 1).wall_clock,
              SolveDp(count, model).total_cost);
  }
}

TEST(ScheduleTest, InvariantsHold) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<std::int64_t> size(1, 3);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::int64_t> sizes(10);
    for (auto& x : sizes) x = size(rng);
    const PpuSchedule s = Schedule(BlockSet(sizes), testing::Quad9(), 3);
    double worst = 0;
    for (std::size_t p = 0; p < s.plans.size(); ++p) {
      EXPECT_EQ(s.per_ppu_serial_time[p], s.plans[p].total_cost);
      worst = std::max(worst, s.per_ppu_serial_time[p]);
    }
    EXPECT_EQ(s.wall_clock, worst);
  }
}

TEST(ScheduleTest, TooManyUnequalBlocksOnOneUnit) {
  std::vector<std::int64_t> sizes(kMaxExactBlocks + 1, 1);
  sizes[0] = 2;
  EXPECT_THROW(Schedule(BlockSet(sizes), testing::Quad9(), 1), Error);
}

TEST(ReportTest, GanttRowsAndIdleTail) {
  const PpuSchedule s = Schedule(BlockSet::Uniform(6, 1), testing::Quad9(), 3);
  const std::string gantt = RenderGantt(s, testing::Quad9(), 20);
  EXPECT_NE(gantt.find("wall clock 13 s, 3 PPU(s)"), std::string::npos);
  EXPECT_NE(gantt.find("PPU 0 |####################| busy 13 idle 0"),
            std::string::npos);
  const PpuSchedule idle =
      Schedule(BlockSet::Uniform(1, 1), testing::Quad9(), 2);
  const std::string idle_gantt = RenderGantt(idle, testing::Quad9(), 10);
  EXPECT_NE(idle_gantt.find("PPU 1 |..........|"), std::string::npos);
}

TEST(ReportTest, CsvHasOneRowPerGroup) {
  const PpuSchedule s = Schedule(BlockSet({3, 3, 2, 2, 2}), testing::Quad9(), 2);
  const std::string csv = RenderScheduleCsv(s, testing::Quad9());
  EXPECT_EQ(csv.rfind("ppu,group,start,end\n", 0), 0u);
  std::size_t rows = 0;
  for (const auto& plan : s.plans) rows += plan.groups.size();
  EXPECT_EQ(static_cast<std::size_t>(
                std::count(csv.begin(), csv.end(), '\n')),
            rows + 1);
}

}  // namespace
}  // namespace blockagg
