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

#include "blockagg/cost_model.h"

#include <cmath>
#include <random>
#include <vector>

#include "blockagg/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace blockagg {
namespace {

using ::blockagg::testing::Tabulate;

CurvatureKind KindOf(const std::vector<double>& table, double eps = 1e-9) {
  return Classify(table, eps).kind;
}

TEST(ClassifyTest, LinearTable) {
  EXPECT_EQ(KindOf(Tabulate(5, [](double x) { return 5 + 2 * x; })),
            CurvatureKind::kLinear);
}

TEST(ClassifyTest, QuadraticIsConvex) {
  EXPECT_EQ(KindOf(Tabulate(12, [](double x) { return 9 + x * x; })),
            CurvatureKind::kConvex);
}

TEST(ClassifyTest, RoundedSqrtIsConcave) {
  const std::vector<double> table{1.0, 1.414214, 1.732051, 2.0};
  EXPECT_EQ(KindOf(table), CurvatureKind::kConcave);
}

TEST(ClassifyTest, MixedTablesAreGeneral) {
  EXPECT_EQ(KindOf({10, 12, 30, 35}), CurvatureKind::kGeneral);
  EXPECT_EQ(KindOf({10, 25, 27, 50}), CurvatureKind::kGeneral);
}

TEST(ClassifyTest, ConstantTableIsLinear) {
  EXPECT_EQ(KindOf({4, 4, 4, 4, 4}), CurvatureKind::kLinear);
}

TEST(ClassifyTest, RecordsTolerance) {
  EXPECT_EQ(Classify(std::vector<double>{1, 2, 4}, 0.25).tolerance_eps, 0.25);
}

TEST(ClassifyTest, RejectsShortInputAndBadEps) {
  const std::vector<double> two{1, 2};
  try {
    Classify(two, 1e-9);
    FAIL() << "expected classification-undefined";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClassificationUndefined);
  }
  EXPECT_THROW(Classify(std::vector<double>{1, 2, 3}, -1.0), Error);
}

TEST(ClassifyTest, WideToleranceKeepsQuadraticConvex) {
  EXPECT_EQ(KindOf(Tabulate(12, [](double x) { return 9 + x * x; }), 0.3),
            CurvatureKind::kConvex);
}

TEST(ClassifyTest, ScaleInvariantAndIdempotent) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> table =
        t % 3 == 0   ? testing::RandomConvex(rng, 20, t)
        : t % 3 == 1 ? testing::RandomConcave(rng, 20, t)
                     : testing::RandomTable(rng, 20);
    const CurvatureKind kind = KindOf(table);
    EXPECT_EQ(KindOf(table), kind);
    for (double scale : {1e-3, 0.5, 8.0, 1e4}) {
      std::vector<double> scaled = table;
      for (double& v : scaled) v *= scale;
      EXPECT_EQ(KindOf(scaled), kind) << "table " << t << " scale " << scale;
    }
  }
}

TEST(ClassifyTest, RandomConvexAndConcaveTablesClassify) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    EXPECT_EQ(KindOf(testing::RandomConvex(rng, 60, t)),
              CurvatureKind::kConvex);
    EXPECT_EQ(KindOf(testing::RandomConcave(rng, 60, t)),
              CurvatureKind::kConcave);
    EXPECT_EQ(KindOf(testing::RandomLinear(rng, 60, t)),
              CurvatureKind::kLinear);
  }
}

TEST(CostModelTest, OptimalSizeExamples) {
  EXPECT_EQ(testing::Quad9(12).OptimalSize().blocks, 3);
  EXPECT_DOUBLE_EQ(testing::Quad9(12).OptimalSize().per_unit_cost, 6.0);
  const CostModel linear(1, Tabulate(9, [](double x) { return 5 + 2 * x; }));
  EXPECT_EQ(linear.OptimalSize().blocks, 9);
  const CostModel root(1, Tabulate(4, [](double x) { return std::sqrt(x); }));
  EXPECT_EQ(root.OptimalSize().blocks, 4);
}

TEST(CostModelTest, OptimalSizeNearSqrtA) {
  const std::vector<std::pair<double, std::int64_t>> expected{
      {1, 1}, {4, 2}, {9, 3}, {16, 4}};
  for (const auto& [a, star] : expected) {
    const CostModel model(
        1, Tabulate(40, [a = a](double x) { return a + x * x; }));
    EXPECT_EQ(model.OptimalSize().blocks, star) << "a=" << a;
  }
}

TEST(CostModelTest, OptimalSizeMatchesLinearScan) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const CostModel model(1 + t % 4, testing::RandomTable(rng, 15));
    std::int64_t best = 1;
    for (std::int64_t i = 2; i <= 15; ++i) {
      if (model.Eval(i) / static_cast<double>(i) <
          model.Eval(best) / static_cast<double>(best)) {
        best = i;
      }
    }
    EXPECT_EQ(model.OptimalSize().blocks, best);
  }
}

TEST(CostModelTest, OptimalSizeTiesTowardSmaller) {
  const CostModel model(1, {2, 4, 6, 8});
  EXPECT_EQ(model.OptimalSize().blocks, 1);
}

TEST(CostModelTest, OptimalSizeRespectsLimit) {
  EXPECT_EQ(testing::Quad9(12).OptimalSize(2).blocks, 2);
}

TEST(CostModelTest, EvalExamples) {
  const CostModel quad = testing::Quad9(12);
  EXPECT_EQ(quad.Eval(3), 18);
  EXPECT_EQ(quad.Eval(0), 0);
  const CostModel linear(1, Tabulate(6, [](double x) { return 5 + 2 * x; }));
  EXPECT_EQ(linear.Eval(6), 17);
  try {
    linear.Eval(7);
    FAIL() << "expected out-of-range";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(CostModelTest, EvalSizeUsesBlockGrid) {
  const CostModel model(3, {10, 20, 40});
  EXPECT_EQ(model.EvalSize(6), 20);
  EXPECT_EQ(model.EvalSize(0), 0);
  try {
    model.EvalSize(4);
    FAIL() << "expected grid mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridMismatch);
  }
}

TEST(CostModelTest, CoarsenSelectsMultiples) {
  const CostModel model(1, {1, 2, 3, 4, 5, 6, 7});
  const CostModel coarse = model.Coarsen(3);
  EXPECT_EQ(coarse.block_size(), 3);
  EXPECT_EQ(coarse.max_blocks(), 2);
  EXPECT_EQ(coarse.Eval(2), 6);
}

TEST(CostModelTest, ShortModelHasNoCurvature) {
  EXPECT_FALSE(CostModel(1, {1, 2}).curvature().has_value());
  EXPECT_TRUE(CostModel(1, {1, 2, 3}).curvature().has_value());
}

TEST(CostModelTest, RejectsInvalidInput) {
  EXPECT_THROW(CostModel(0, {1.0}), Error);
  EXPECT_THROW(CostModel(1, {}), Error);
  EXPECT_THROW(CostModel(1, {1.0, 0.0}), Error);
  EXPECT_THROW(CostModel(1, {1.0, -2.0}), Error);
  EXPECT_THROW(CostModel(1, {1.0, NAN}), Error);
  EXPECT_THROW(CostModel(1, {1.0}, -1e-3), Error);
  EXPECT_THROW(CostModel(1, {1.0, 2.0}, 0.0, "s", Statistic::kMedian, {5}),
               Error);
}

TEST(StatisticTest, NamesRoundTrip) {
  for (Statistic s : {Statistic::kMedian, Statistic::kMean, Statistic::kMax}) {
    EXPECT_EQ(ParseStatistic(StatisticName(s)), s);
  }
  EXPECT_THROW(ParseStatistic("mode"), Error);
}

}  // namespace
}  // namespace blockagg
