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

// Measuring a platform's solve-time profile. A probe is timed sequentially
// at each LP size of a grid; the per-size statistic of those timings becomes
// the cost table.

#ifndef BLOCKAGG_CALIBRATION_H_
#define BLOCKAGG_CALIBRATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blockagg/cost_model.h"
#include "blockagg/lp_generator.h"

namespace blockagg {

enum class ProbeMode { kSynthetic, kExternalCommand };

// Busy-waits for fixed + linear * x + quadratic * x^2 seconds at size x,
// scaled by a factor drawn uniformly from [1 - noise, 1 + noise].
struct SyntheticProbe {
  double fixed = 0.0;
  double linear = 0.0;
  double quadratic = 0.0;
  double noise = 0.0;

  bool operator==(const SyntheticProbe&) const = default;
};

struct ProbeSpec {
  ProbeMode mode = ProbeMode::kSynthetic;
  SyntheticProbe synthetic;
  // Shell command run through /bin/sh -c; "{lp_file_path}" and "{size}" are
  // substituted. Timed from spawn to exit.
  std::string command;
  LpGeneratorOptions lp;
  std::uint64_t seed = 0;

  bool operator==(const ProbeSpec&) const = default;
};

struct SizeSamples {
  std::int64_t size = 0;
  std::vector<double> seconds;

  bool operator==(const SizeSamples&) const = default;
};

struct ProbeFailure {
  std::int64_t size = 0;
  std::string message;

  bool operator==(const ProbeFailure&) const = default;
};

struct CalibrationRecord {
  ProbeSpec probe;
  std::vector<std::int64_t> grid;
  std::int64_t repeats = 0;
  std::int64_t warmups = 0;
  // One entry per completed size, in grid order.
  std::vector<SizeSamples> samples;
  Statistic statistic = Statistic::kMedian;
  std::string timestamp;
  std::string platform_note;
  // Set when probing stopped early; samples then hold the sizes finished
  // before the failure and nothing is made up for the rest.
  std::optional<ProbeFailure> failure;

  bool operator==(const CalibrationRecord&) const = default;
};

struct CalibrationOptions {
  std::int64_t repeats = 7;
  std::int64_t warmups = 1;
  Statistic statistic = Statistic::kMedian;
  std::string platform_note;
  // Where generated LP files go for external probes; empty means the
  // system temporary directory.
  std::string work_dir;
};

// Throws Error(kInvalidArgument) for an empty, non-ascending or nonpositive
// grid and Error(kClockError) if the clock runs backwards. Probe failures
// do not throw; they are recorded in the result.
CalibrationRecord RunCalibration(const ProbeSpec& spec,
                                 std::span<const std::int64_t> grid,
                                 const CalibrationOptions& options = {});

// Collapses raw timings to one number per the statistic.
double ReduceSamples(std::span<const double> seconds, Statistic statistic);

struct FitOptions {
  Statistic statistic = Statistic::kMedian;
  double eps = kDefaultCurvatureEps;
  std::int64_t block_size = 1;
  // Fill interior holes of the grid by linear interpolation; filled entries
  // are listed in CostModel::interpolated().
  bool interpolate_gaps = false;
};

// Builds the cost table from a record. Sizes must be multiples of
// block_size and cover i = 1..i_max contiguously (Error(kGridGap)
// otherwise, unless interpolate_gaps fills interior holes).
CostModel FitModel(const CalibrationRecord& record,
                   const FitOptions& options = {});

}  // namespace blockagg

#endif  // BLOCKAGG_CALIBRATION_H_
