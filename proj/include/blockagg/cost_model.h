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

// Platform solve-time profile P, tabulated at integer multiples of the
// block size: costs()[i - 1] is the time to solve a subproblem made of i
// blocks. The table is the only ground truth the solvers see.

#ifndef BLOCKAGG_COST_MODEL_H_
#define BLOCKAGG_COST_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blockagg {

inline constexpr double kDefaultCurvatureEps = 1e-9;

enum class CurvatureKind { kLinear, kConvex, kConcave, kGeneral };

std::string_view CurvatureName(CurvatureKind kind);

struct Curvature {
  CurvatureKind kind = CurvatureKind::kGeneral;
  double tolerance_eps = kDefaultCurvatureEps;

  bool operator==(const Curvature&) const = default;
};

// Which per-size statistic of the raw timings the table encodes.
enum class Statistic { kMedian, kMean, kMax };

std::string_view StatisticName(Statistic statistic);
// Throws Error(kParse) on an unknown name.
Statistic ParseStatistic(std::string_view name);

// Classifies a table by curvature. Each entry may move by at most
// eps * |P(i)|; the table is
//   Linear  if some line fits inside those bands and the least-squares
//           quadratic term over the grid is within eps * max|P|,
//   Convex  if some convex table fits the bands and no concave one does,
//   Concave symmetrically,
// and when both a convex and a concave table fit (but not Linear) the sign
// of the fitted quadratic term decides. Anything else is General.
// At eps -> 0 this reduces to the sign pattern of the second differences.
// Throws Error(kClassificationUndefined) for fewer than three samples and
// Error(kInvalidArgument) for negative eps.
Curvature Classify(std::span<const double> costs, double eps);

struct XOpt {
  std::int64_t blocks = 0;     // i_star
  double per_unit_cost = 0.0;  // P(i_star * s) / (i_star * s)
};

class CostModel {
 public:
  // costs[i - 1] = P(i * block_size). Classification runs when there are at
  // least three samples; otherwise curvature() is empty.
  CostModel(std::int64_t block_size, std::vector<double> costs,
            double eps = kDefaultCurvatureEps, std::string unit = "s",
            Statistic statistic = Statistic::kMedian,
            std::vector<std::int64_t> interpolated = {});

  std::int64_t block_size() const { return block_size_; }
  std::int64_t max_blocks() const {
    return static_cast<std::int64_t>(costs_.size());
  }
  std::span<const double> costs() const { return costs_; }
  double eps() const { return eps_; }
  const std::string& unit() const { return unit_; }
  Statistic statistic() const { return statistic_; }
  const std::optional<Curvature>& curvature() const { return curvature_; }
  // Grid indices i whose cost was filled by interpolation, ascending.
  const std::vector<std::int64_t>& interpolated() const {
    return interpolated_;
  }

  // P(num_blocks * s); Eval(0) is 0 because an empty subproblem costs
  // nothing. Throws Error(kOutOfRange) past the end of the grid.
  double Eval(std::int64_t num_blocks) const;

  // Cost of a subproblem of LP size `size`. Throws Error(kGridMismatch) when
  // size is not a multiple of s and Error(kOutOfRange) beyond the grid.
  double EvalSize(std::int64_t size) const;

  // Grid argmin of P(i s) / (i s) over i in [1, min(limit, i_max)]; ties go
  // to the smaller i. limit <= 0 means the whole grid.
  XOpt OptimalSize(std::int64_t limit = 0) const;

  // The same table re-gridded at a coarser block size `factor * s`.
  CostModel Coarsen(std::int64_t factor) const;

  bool operator==(const CostModel& other) const;

 private:
  std::int64_t block_size_;
  std::vector<double> costs_;
  double eps_;
  std::string unit_;
  Statistic statistic_;
  std::vector<std::int64_t> interpolated_;
  std::optional<Curvature> curvature_;
};

}  // namespace blockagg

#endif  // BLOCKAGG_COST_MODEL_H_
