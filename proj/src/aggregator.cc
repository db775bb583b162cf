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

#include "blockagg/aggregator.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "blockagg/errors.h"
#include "blockagg/ilp_micro.h"

namespace blockagg {

namespace {

void CheckCount(std::int64_t count, const CostModel& model) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "block count must be >= 1, got " + std::to_string(count));
  }
  if (model.max_blocks() < count) {
    throw Error(ErrorCode::kOutOfRange,
                "model grid covers " + std::to_string(model.max_blocks()) +
                    " blocks but " + std::to_string(count) +
                    " are to be aggregated");
  }
}

void RequireCurvature(const CostModel& model, CurvatureKind kind) {
  if (!model.curvature() || model.curvature()->kind != kind) {
    const std::string_view actual =
        model.curvature() ? CurvatureName(model.curvature()->kind)
                          : "unclassified";
    throw Error(ErrorCode::kWrongPath,
                std::string(CurvatureName(kind)) +
                    " solver called on a model classified " +
                    std::string(actual));
  }
}

std::vector<std::int64_t> SingleSize(std::int64_t count, std::int64_t size,
                                     std::int64_t how_many) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(count) + 1, 0);
  counts[static_cast<std::size_t>(size)] = how_many;
  return counts;
}

AggregationPlan Singletons(std::int64_t count, const CostModel& model,
                           SolverPath path) {
  return PlanFromCounts(SingleSize(count, 1, count), model.block_size(), model,
                        path);
}

AggregationPlan FullAggregation(std::int64_t count, const CostModel& model,
                                SolverPath path) {
  return PlanFromCounts(SingleSize(count, count, 1), model.block_size(), model,
                        path);
}

// Exhaustive restricted-growth enumeration for SolveExactUnequal.
class SetPartitionSearch {
 public:
  SetPartitionSearch(std::vector<std::int64_t> units, const CostModel& model)
      : units_(std::move(units)),
        model_(model),
        label_(units_.size(), 0),
        sums_(units_.size(), 0) {}

  void Run() { Place(0, 0); }

  const std::vector<std::size_t>& best_labels() const { return best_label_; }

 private:
  void Place(std::size_t block, std::size_t groups) {
    if (block == units_.size()) {
      Score(groups);
      return;
    }
    for (std::size_t g = 0; g <= groups; ++g) {
      label_[block] = g;
      sums_[g] += units_[block];
      Place(block + 1, g == groups ? groups + 1 : groups);
      sums_[g] -= units_[block];
    }
  }

  void Score(std::size_t groups) {
    double quick = 0.0;
    for (std::size_t g = 0; g < groups; ++g) quick += model_.Eval(sums_[g]);
    if (!best_label_.empty() &&
        quick > best_quick_ + 1e-9 * std::abs(best_quick_)) {
      return;
    }
    std::vector<std::int64_t> key(sums_.begin(),
                                  sums_.begin() + static_cast<long>(groups));
    std::sort(key.begin(), key.end(), std::greater<>());
    double cost = 0.0;
    for (std::int64_t y : key) cost += model_.Eval(y);
    const bool better = best_label_.empty() || cost < best_cost_ ||
                        (cost == best_cost_ && key < best_key_);
    if (better) {
      best_cost_ = cost;
      best_quick_ = quick;
      best_key_ = std::move(key);
      best_label_ = label_;
    }
  }

  std::vector<std::int64_t> units_;
  const CostModel& model_;
  std::vector<std::size_t> label_;
  std::vector<std::int64_t> sums_;

  std::vector<std::size_t> best_label_;
  std::vector<std::int64_t> best_key_;
  double best_cost_ = 0.0;
  double best_quick_ = 0.0;
};

}  // namespace

AggregationPlan SolveDp(std::int64_t count, const CostModel& model) {
  CheckCount(count, model);
  const auto n = static_cast<std::size_t>(count);
  // best[i]: optimal time for i blocks; prev[i]: the state the optimal last
  // step came from.
  std::vector<double> best(n + 1, 0.0);
  std::vector<std::size_t> prev(n + 1, 0);
  const std::span<const double> table = model.costs();
  for (std::size_t i = 1; i <= n; ++i) {
    double value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < i; ++j) {
      const double candidate = table[i - j - 1] + best[j];
      if (candidate < value) {
        value = candidate;
        prev[i] = j;
      }
    }
    best[i] = value;
  }
  std::vector<std::int64_t> counts(n + 1, 0);
  for (std::size_t i = n; i > 0; i = prev[i]) ++counts[i - prev[i]];
  return PlanFromCounts(counts, model.block_size(), model, SolverPath::kDp);
}

AggregationPlan SolveConvex(std::int64_t count, const CostModel& model,
                            const ConvexOptions& options) {
  RequireCurvature(model, CurvatureKind::kConvex);
  CheckCount(count, model);
  if (count == 1) return FullAggregation(count, model, SolverPath::kConvex);

  const std::int64_t i_star = model.OptimalSize(count).blocks;
  if (options.use_trivial_cases) {
    if (i_star == 1) return Singletons(count, model, SolverPath::kConvex);
    if (i_star == count) {
      return FullAggregation(count, model, SolverPath::kConvex);
    }
  }

  std::int64_t k_lo = 1;
  std::int64_t k_hi = count - 1;
  const std::int64_t r = i_star + 1;
  if (options.use_constant_branch && r >= 3 && count > r * r - r - 1) {
    k_lo = std::max<std::int64_t>(1, r - 2);
    k_hi = std::min(count - 1, r);
  }

  std::vector<std::int64_t> best_counts;
  double best_objective = std::numeric_limits<double>::infinity();
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    MicroIlp ilp;
    ilp.costs = {model.Eval(k), model.Eval(k + 1)};
    ilp.weights = {k, k + 1};
    ilp.target = count;
    const auto solution = SolveMicroIlp(ilp);
    if (!solution || !(solution->objective < best_objective)) continue;
    best_objective = solution->objective;
    best_counts.assign(static_cast<std::size_t>(count) + 1, 0);
    best_counts[static_cast<std::size_t>(k)] += solution->assignment[0];
    best_counts[static_cast<std::size_t>(k + 1)] += solution->assignment[1];
  }
  // k = 1 is always feasible (all singletons), so the full scan never comes
  // back empty; the constant branch is feasible by the Frobenius bound.
  if (best_counts.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no feasible two-size split for " + std::to_string(count) +
                    " blocks");
  }
  return PlanFromCounts(best_counts, model.block_size(), model,
                        SolverPath::kConvex);
}

AggregationPlan SolveConcave(std::int64_t count, const CostModel& model) {
  RequireCurvature(model, CurvatureKind::kConcave);
  CheckCount(count, model);
  if (count == 1) return FullAggregation(count, model, SolverPath::kConcave);

  const double unit_cost = model.Eval(1);
  const double full_cost = model.Eval(count);
  std::vector<std::int64_t> best_counts = SingleSize(count, 1, count);
  double best_objective = unit_cost * static_cast<double>(count);
  if (full_cost < best_objective) {
    best_objective = full_cost;
    best_counts = SingleSize(count, count, 1);
  }
  for (std::int64_t k = 2; k <= count - 1; ++k) {
    // Variables ordered (full, middle, unit) so the unit-weight variable is
    // the one the equality forces.
    MicroIlp ilp;
    ilp.costs = {full_cost, model.Eval(k), unit_cost};
    ilp.weights = {count, k, 1};
    ilp.target = count;
    const auto solution = SolveMicroIlp(ilp);
    if (!solution || !(solution->objective < best_objective)) continue;
    best_objective = solution->objective;
    best_counts.assign(static_cast<std::size_t>(count) + 1, 0);
    best_counts[static_cast<std::size_t>(count)] += solution->assignment[0];
    best_counts[static_cast<std::size_t>(k)] += solution->assignment[1];
    best_counts[1] += solution->assignment[2];
  }
  return PlanFromCounts(best_counts, model.block_size(), model,
                        SolverPath::kConcave);
}

AggregationPlan SolveLinear(std::int64_t count, const CostModel& model) {
  RequireCurvature(model, CurvatureKind::kLinear);
  CheckCount(count, model);
  if (model.max_blocks() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need two samples to estimate the intercept");
  }
  const double s = static_cast<double>(model.block_size());
  const double slope = (model.Eval(2) - model.Eval(1)) / s;
  const double intercept = model.Eval(1) - slope * s;
  return intercept >= 0.0 ? FullAggregation(count, model, SolverPath::kLinear)
                          : Singletons(count, model, SolverPath::kLinear);
}

AggregationPlan SolveEqual(std::int64_t count, const CostModel& model,
                           bool force_dp) {
  if (force_dp || !model.curvature()) return SolveDp(count, model);
  switch (model.curvature()->kind) {
    case CurvatureKind::kLinear: return SolveLinear(count, model);
    case CurvatureKind::kConvex: return SolveConvex(count, model);
    case CurvatureKind::kConcave: return SolveConcave(count, model);
    case CurvatureKind::kGeneral: break;
  }
  return SolveDp(count, model);
}

AggregationPlan SolveExactUnequal(const BlockSet& blocks,
                                  const CostModel& model) {
  if (blocks.size() > kMaxExactBlocks) {
    throw Error(ErrorCode::kInstanceTooLarge,
                std::to_string(blocks.size()) +
                    " blocks of unequal size exceed the exhaustive limit of " +
                    std::to_string(kMaxExactBlocks));
  }
  const std::int64_t s = model.block_size();
  std::vector<std::int64_t> units;
  for (std::int64_t size : blocks.sizes()) {
    if (size % s != 0) {
      throw Error(ErrorCode::kGridMismatch,
                  "block size " + std::to_string(size) +
                      " is not a multiple of the model block size " +
                      std::to_string(s));
    }
    units.push_back(size / s);
  }
  if (blocks.total() / s > model.max_blocks()) {
    throw Error(ErrorCode::kOutOfRange,
                "blocks total " + std::to_string(blocks.total()) +
                    " exceeds the model grid end " +
                    std::to_string(model.max_blocks() * s));
  }

  SetPartitionSearch search(units, model);
  search.Run();
  const std::vector<std::size_t>& labels = search.best_labels();

  AggregationPlan plan;
  plan.blocks.assign(blocks.sizes().begin(), blocks.sizes().end());
  plan.solver_path = SolverPath::kExact;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == plan.groups.size()) {
      plan.groups.emplace_back();
      plan.group_sums.push_back(0);
    }
    plan.groups[labels[i]].push_back(i);
    plan.group_sums[labels[i]] += plan.blocks[i];
  }
  plan.total_cost = EvaluatePlan(plan, model);
  return plan;
}

AggregationPlan SolveBlocks(const BlockSet& blocks, const CostModel& model,
                            bool force_dp) {
  const auto equal = blocks.equal_size();
  if (!equal) return SolveExactUnequal(blocks, model);
  if (equal->block_size % model.block_size() != 0) {
    throw Error(ErrorCode::kGridMismatch,
                "block size " + std::to_string(equal->block_size) +
                    " is not a multiple of the model block size " +
                    std::to_string(model.block_size()));
  }
  const std::int64_t factor = equal->block_size / model.block_size();
  if (factor > model.max_blocks()) {
    throw Error(ErrorCode::kOutOfRange,
                "block size " + std::to_string(equal->block_size) +
                    " exceeds the model grid");
  }
  return SolveEqual(equal->count, model.Coarsen(factor), force_dp);
}

}  // namespace blockagg
