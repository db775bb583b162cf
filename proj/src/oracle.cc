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

#include "blockagg/oracle.h"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>

#include "blockagg/errors.h"

namespace blockagg {

PartitionStream::PartitionStream(std::int64_t target) {
  if (target < 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot partition a negative");
  }
  if (target > 0) parts_.push_back(target);
}

std::optional<std::vector<std::int64_t>> PartitionStream::Next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return parts_;
  }
  // Rightmost part larger than one.
  std::size_t k = parts_.size();
  while (k > 0 && parts_[k - 1] == 1) --k;
  if (k == 0) {
    done_ = true;
    return std::nullopt;
  }
  --k;
  std::int64_t rest = static_cast<std::int64_t>(parts_.size() - k - 1) + 1;
  const std::int64_t part = --parts_[k];
  parts_.resize(k + 1);
  while (rest > 0) {
    const std::int64_t take = std::min(part, rest);
    parts_.push_back(take);
    rest -= take;
  }
  return parts_;
}

PartitionChoice BestPartition(std::int64_t count, const CostModel& model) {
  PartitionChoice best;
  best.cost = std::numeric_limits<double>::infinity();
  PartitionStream stream(count);
  while (auto parts = stream.Next()) {
    double cost = 0.0;
    for (std::int64_t p : *parts) cost += model.Eval(p);
    if (cost < best.cost) {
      best.cost = cost;
      best.parts = std::move(*parts);
    }
  }
  return best;
}

namespace {

class SubsetEnumerator {
 public:
  SubsetEnumerator(std::span<const std::int64_t> sizes, const CostModel& model)
      : sizes_(sizes), model_(model) {}

  SetPartitionChoice Run() {
    best_.cost = std::numeric_limits<double>::infinity();
    const std::uint32_t all = sizes_.size() >= 32
                                  ? ~0u
                                  : (1u << sizes_.size()) - 1u;
    Recurse(all);
    return best_;
  }

 private:
  // The lowest remaining block always opens the next group, which it then
  // shares with every possible subset of the other remaining blocks.
  void Recurse(std::uint32_t remaining) {
    if (remaining == 0) {
      Score();
      return;
    }
    const std::uint32_t lowest = remaining & (~remaining + 1u);
    const std::uint32_t others = remaining ^ lowest;
    std::uint32_t sub = others;
    while (true) {
      current_.push_back(lowest | sub);
      Recurse(others & ~sub);
      current_.pop_back();
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
  }

  void Score() {
    std::vector<std::int64_t> sums;
    for (std::uint32_t mask : current_) {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (mask & (1u << i)) sum += sizes_[i];
      }
      sums.push_back(sum);
    }
    std::sort(sums.begin(), sums.end(), std::greater<>());
    double cost = 0.0;
    for (std::int64_t y : sums) cost += model_.EvalSize(y);
    if (!(cost < best_.cost)) return;
    best_.cost = cost;
    best_.groups.clear();
    for (std::uint32_t mask : current_) {
      std::vector<std::size_t> group;
      for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (mask & (1u << i)) group.push_back(i);
      }
      best_.groups.push_back(std::move(group));
    }
  }

  std::span<const std::int64_t> sizes_;
  const CostModel& model_;
  std::vector<std::uint32_t> current_;
  SetPartitionChoice best_;
};

bool FillBins(const std::vector<std::int64_t>& items, std::size_t next,
              std::array<std::int64_t, 3>& load, std::int64_t target) {
  if (next == items.size()) return true;
  for (std::size_t b = 0; b < 3; ++b) {
    if (load[b] + items[next] > target) continue;
    // Bins with equal load are interchangeable.
    bool repeat = false;
    for (std::size_t c = 0; c < b; ++c) repeat |= load[c] == load[b];
    if (repeat) continue;
    load[b] += items[next];
    if (FillBins(items, next + 1, load, target)) return true;
    load[b] -= items[next];
  }
  return false;
}

}  // namespace

SetPartitionChoice BestSetPartition(std::span<const std::int64_t> sizes,
                                    const CostModel& model) {
  if (sizes.empty() || sizes.size() > 20) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "set-partition oracle takes 1..20 blocks");
  }
  return SubsetEnumerator(sizes, model).Run();
}

bool ThreePartitionDecide(std::span<const std::int64_t> set) {
  std::int64_t sum = 0;
  for (std::int64_t x : set) sum += x;
  if (set.empty() || sum % 3 != 0) return false;
  const std::int64_t target = sum / 3;
  std::vector<std::int64_t> items(set.begin(), set.end());
  std::sort(items.begin(), items.end(), std::greater<>());
  if (items.front() > target) return false;
  std::array<std::int64_t, 3> load{0, 0, 0};
  return FillBins(items, 0, load, target);
}

}  // namespace blockagg
