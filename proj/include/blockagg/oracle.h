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

// Brute-force references. Nothing here shares code with the solvers; the
// CLI's --verify flag and the test suites compare against these.

#ifndef BLOCKAGG_ORACLE_H_
#define BLOCKAGG_ORACLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blockagg/cost_model.h"

namespace blockagg {

// Yields every partition of `target` exactly once, parts in descending
// order, partitions in decreasing lexicographic order: (4), (3 1), (2 2),
// (2 1 1), (1 1 1 1).
class PartitionStream {
 public:
  explicit PartitionStream(std::int64_t target);

  std::optional<std::vector<std::int64_t>> Next();

 private:
  std::vector<std::int64_t> parts_;
  bool started_ = false;
  bool done_ = false;
};

struct PartitionChoice {
  std::vector<std::int64_t> parts;  // block counts per subproblem, descending
  double cost = 0.0;
};

// Scores every integer partition of count; the first minimum in stream
// order wins. Meant for count <= 20 (p(20) = 627).
PartitionChoice BestPartition(std::int64_t count, const CostModel& model);

struct SetPartitionChoice {
  std::vector<std::vector<std::size_t>> groups;  // block indices
  double cost = 0.0;
};

// Scores every set partition of the blocks (sizes in LP units). Meant for
// at most ~12 blocks.
SetPartitionChoice BestSetPartition(std::span<const std::int64_t> sizes,
                                    const CostModel& model);

// Can the multiset be split into three subsets of equal sum?
bool ThreePartitionDecide(std::span<const std::int64_t> set);

}  // namespace blockagg

#endif  // BLOCKAGG_ORACLE_H_
