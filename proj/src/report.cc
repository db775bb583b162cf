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

#include "blockagg/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "blockagg/errors.h"

namespace blockagg {

namespace {

struct Segment {
  double start = 0.0;
  double end = 0.0;
};

std::vector<Segment> Segments(const AggregationPlan& plan,
                              const CostModel& model) {
  std::vector<Segment> segments;
  double clock = 0.0;
  for (std::int64_t sum : plan.group_sums) {
    const double duration = model.EvalSize(sum);
    segments.push_back({clock, clock + duration});
    clock += duration;
  }
  return segments;
}

int Column(double t, double wall_clock, int width) {
  if (wall_clock <= 0.0) return 0;
  return std::clamp(static_cast<int>(std::lround(t / wall_clock * width)), 0,
                    width);
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string RenderGantt(const PpuSchedule& schedule, const CostModel& model,
                        int width) {
  if (width < 1) {
    throw Error(ErrorCode::kInvalidArgument, "gantt width must be >= 1");
  }
  std::ostringstream out;
  out << "wall clock " << FormatNumber(schedule.wall_clock) << ' '
      << model.unit() << ", " << schedule.m << " PPU(s)\n";
  for (std::size_t unit = 0; unit < schedule.plans.size(); ++unit) {
    std::string row(static_cast<std::size_t>(width), '.');
    const auto segments = Segments(schedule.plans[unit], model);
    for (std::size_t g = 0; g < segments.size(); ++g) {
      const int from = Column(segments[g].start, schedule.wall_clock, width);
      int to = Column(segments[g].end, schedule.wall_clock, width);
      // Keep every subproblem visible even when it rounds to zero columns.
      if (to == from && from < width) ++to;
      std::fill(row.begin() + from, row.begin() + to, g % 2 == 0 ? '#' : '=');
    }
    const double busy = schedule.per_ppu_serial_time[unit];
    out << "PPU " << unit << " |" << row << "| busy " << FormatNumber(busy)
        << " idle " << FormatNumber(schedule.wall_clock - busy) << '\n';
  }
  return out.str();
}

std::string RenderScheduleCsv(const PpuSchedule& schedule,
                              const CostModel& model) {
  std::ostringstream out;
  out << "ppu,group,start,end\n";
  for (std::size_t unit = 0; unit < schedule.plans.size(); ++unit) {
    const auto segments = Segments(schedule.plans[unit], model);
    for (std::size_t g = 0; g < segments.size(); ++g) {
      out << unit << ',' << g << ',' << FormatNumber(segments[g].start) << ','
          << FormatNumber(segments[g].end) << '\n';
    }
  }
  return out.str();
}

}  // namespace blockagg
