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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "blockagg/errors.h"

namespace blockagg {

namespace {

// Lower convex hull of the points (i + 1, y[i]) evaluated back on the grid,
// i.e. the greatest convex sequence lying below y.
std::vector<double> GreatestConvexMinorant(std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // Drop b when it lies on or above the chord a -> i.
      const double lhs = (y[b] - y[a]) * static_cast<double>(i - a);
      const double rhs = (y[i] - y[a]) * static_cast<double>(b - a);
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<double> out(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t a = hull[h];
    const std::size_t b = hull[h + 1];
    for (std::size_t i = a; i <= b; ++i) {
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      out[i] = y[a] + t * (y[b] - y[a]);
    }
  }
  if (hull.size() == 1) out[0] = y[0];
  return out;
}

std::vector<double> LeastConcaveMajorant(std::span<const double> y) {
  std::vector<double> neg(y.begin(), y.end());
  for (double& v : neg) v = -v;
  std::vector<double> out = GreatestConvexMinorant(neg);
  for (double& v : out) v = -v;
  return out;
}

// Quadratic coefficient of the least-squares fit over the grid 1..n.
double QuadraticTerm(std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  const double mid = (n + 1.0) / 2.0;
  double s2 = 0.0, s4 = 0.0, sy = 0.0, s2y = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double t = static_cast<double>(i + 1) - mid;
    s2 += t * t;
    s4 += t * t * t * t;
    sy += y[i];
    s2y += t * t * y[i];
  }
  const double det = n * s4 - s2 * s2;
  if (det == 0.0) return 0.0;
  return (n * s2y - s2 * sy) / det;
}

void ValidateCosts(std::span<const double> costs) {
  if (costs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cost model has no samples");
  }
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!std::isfinite(costs[i]) || costs[i] <= 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cost at i=" + std::to_string(i + 1) +
                      " must be finite and strictly positive");
    }
  }
}

}  // namespace

std::string_view CurvatureName(CurvatureKind kind) {
  switch (kind) {
    case CurvatureKind::kLinear: return "linear";
    case CurvatureKind::kConvex: return "convex";
    case CurvatureKind::kConcave: return "concave";
    case CurvatureKind::kGeneral: return "general";
  }
  return "general";
}

std::string_view StatisticName(Statistic statistic) {
  switch (statistic) {
    case Statistic::kMedian: return "median";
    case Statistic::kMean: return "mean";
    case Statistic::kMax: return "max";
  }
  return "median";
}

Statistic ParseStatistic(std::string_view name) {
  if (name == "median") return Statistic::kMedian;
  if (name == "mean") return Statistic::kMean;
  if (name == "max") return Statistic::kMax;
  throw Error(ErrorCode::kParse, "unknown statistic '" + std::string(name) +
                                     "' (expected median|mean|max)");
}

Curvature Classify(std::span<const double> costs, double eps) {
  if (costs.size() < 3) {
    throw Error(ErrorCode::kClassificationUndefined,
                "need at least 3 samples to classify curvature, got " +
                    std::to_string(costs.size()));
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidArgument, "eps must be finite and >= 0");
  }
  double scale = 0.0;
  for (double c : costs) scale = std::max(scale, std::abs(c));
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  std::vector<double> lo(costs.size()), hi(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    lo[i] = costs[i] - eps * std::abs(costs[i]);
    hi[i] = costs[i] + eps * std::abs(costs[i]);
  }
  const std::vector<double> convex_below_hi = GreatestConvexMinorant(hi);
  const std::vector<double> concave_above_lo = LeastConcaveMajorant(lo);

  bool convex_fits = true, concave_fits = true, line_fits = true;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (convex_below_hi[i] < lo[i] - slack) convex_fits = false;
    if (concave_above_lo[i] > hi[i] + slack) concave_fits = false;
    // A line fits between the bands iff the concave majorant of the lower
    // band stays under the convex minorant of the upper band.
    if (concave_above_lo[i] > convex_below_hi[i] + slack) line_fits = false;
  }
  const double quad = QuadraticTerm(costs);
  const double span = static_cast<double>(costs.size() - 1);
  const bool flat = std::abs(quad) * span * span <= eps * scale + slack;

  Curvature result;
  result.tolerance_eps = eps;
  if (line_fits && flat) {
    result.kind = CurvatureKind::kLinear;
  } else if (convex_fits && !concave_fits) {
    result.kind = CurvatureKind::kConvex;
  } else if (concave_fits && !convex_fits) {
    result.kind = CurvatureKind::kConcave;
  } else if (convex_fits && concave_fits && quad > slack) {
    result.kind = CurvatureKind::kConvex;
  } else if (convex_fits && concave_fits && quad < -slack) {
    result.kind = CurvatureKind::kConcave;
  } else {
    result.kind = CurvatureKind::kGeneral;
  }
  return result;
}

CostModel::CostModel(std::int64_t block_size, std::vector<double> costs,
                     double eps, std::string unit, Statistic statistic,
                     std::vector<std::int64_t> interpolated)
    : block_size_(block_size),
      costs_(std::move(costs)),
      eps_(eps),
      unit_(std::move(unit)),
      statistic_(statistic),
      interpolated_(std::move(interpolated)) {
  if (block_size_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "block size must be >= 1");
  }
  ValidateCosts(costs_);
  if (!(eps_ >= 0.0) || !std::isfinite(eps_)) {
    throw Error(ErrorCode::kInvalidArgument, "eps must be finite and >= 0");
  }
  std::sort(interpolated_.begin(), interpolated_.end());
  interpolated_.erase(std::unique(interpolated_.begin(), interpolated_.end()),
                      interpolated_.end());
  for (std::int64_t i : interpolated_) {
    if (i < 1 || i > max_blocks()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "interpolated index " + std::to_string(i) + " off the grid");
    }
  }
  if (costs_.size() >= 3) curvature_ = Classify(costs_, eps_);
}

double CostModel::Eval(std::int64_t num_blocks) const {
  if (num_blocks == 0) return 0.0;
  if (num_blocks < 0 || num_blocks > max_blocks()) {
    throw Error(ErrorCode::kOutOfRange,
                "subproblem of " + std::to_string(num_blocks) +
                    " blocks is outside the model grid [1, " +
                    std::to_string(max_blocks()) + "]");
  }
  return costs_[static_cast<std::size_t>(num_blocks - 1)];
}

double CostModel::EvalSize(std::int64_t size) const {
  if (size % block_size_ != 0) {
    throw Error(ErrorCode::kGridMismatch,
                "size " + std::to_string(size) +
                    " is not a multiple of the model block size " +
                    std::to_string(block_size_));
  }
  return Eval(size / block_size_);
}

XOpt CostModel::OptimalSize(std::int64_t limit) const {
  const std::int64_t end =
      limit <= 0 ? max_blocks() : std::min(limit, max_blocks());
  XOpt best;
  best.per_unit_cost = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 1; i <= end; ++i) {
    const double ratio = costs_[static_cast<std::size_t>(i - 1)] /
                         static_cast<double>(i * block_size_);
    if (ratio < best.per_unit_cost) {
      best.blocks = i;
      best.per_unit_cost = ratio;
    }
  }
  return best;
}

CostModel CostModel::Coarsen(std::int64_t factor) const {
  if (factor < 1 || factor > max_blocks()) {
    throw Error(ErrorCode::kGridMismatch,
                "cannot re-grid a " + std::to_string(max_blocks()) +
                    "-entry table by factor " + std::to_string(factor));
  }
  if (factor == 1) return *this;
  std::vector<double> coarse;
  std::vector<std::int64_t> marks;
  for (std::int64_t j = 1; j * factor <= max_blocks(); ++j) {
    coarse.push_back(costs_[static_cast<std::size_t>(j * factor - 1)]);
    if (std::binary_search(interpolated_.begin(), interpolated_.end(),
                           j * factor)) {
      marks.push_back(j);
    }
  }
  return CostModel(block_size_ * factor, std::move(coarse), eps_, unit_,
                   statistic_, std::move(marks));
}

bool CostModel::operator==(const CostModel& other) const {
  return block_size_ == other.block_size_ && costs_ == other.costs_ &&
         eps_ == other.eps_ && unit_ == other.unit_ &&
         statistic_ == other.statistic_ &&
         interpolated_ == other.interpolated_;
}

}  // namespace blockagg
