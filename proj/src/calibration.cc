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

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>

#include "blockagg/errors.h"

extern char** environ;

namespace blockagg {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(Clock::is_steady);

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void SpinFor(double seconds) {
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(seconds));
  while (Clock::now() < deadline) {
  }
}

std::string Substitute(std::string text, const std::string& key,
                       const std::string& value) {
  for (std::size_t pos = text.find(key); pos != std::string::npos;
       pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
  return text;
}

// Runs `command` under /bin/sh; returns an error message, empty on success.
std::string RunShell(const std::string& command) {
  const char* argv[] = {"/bin/sh", "-c", command.c_str(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", nullptr, nullptr,
                             const_cast<char* const*>(argv), environ);
  if (rc != 0) return std::string("spawn failed: ") + std::strerror(rc);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) return std::string("waitpid: ") + std::strerror(errno);
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 0) return {};
  if (WIFEXITED(status)) {
    return "command exited with status " + std::to_string(WEXITSTATUS(status));
  }
  if (WIFSIGNALED(status)) {
    return "command killed by signal " + std::to_string(WTERMSIG(status));
  }
  return "command ended abnormally";
}

// One probe invocation at one size. Each call owns its timing.
class Prober {
 public:
  Prober(const ProbeSpec& spec, std::filesystem::path work_dir)
      : spec_(spec), work_dir_(std::move(work_dir)), rng_(spec.seed) {}

  ~Prober() {
    std::error_code ignored;
    for (const auto& path : written_) std::filesystem::remove(path, ignored);
  }

  // Returns elapsed seconds, or an error message.
  std::pair<double, std::string> Probe(std::int64_t size) {
    if (spec_.mode == ProbeMode::kSynthetic) {
      const SyntheticProbe& p = spec_.synthetic;
      const double x = static_cast<double>(size);
      double duration = p.fixed + p.linear * x + p.quadratic * x * x;
      if (p.noise > 0.0) {
        std::uniform_real_distribution<double> jitter(1.0 - p.noise,
                                                      1.0 + p.noise);
        duration *= jitter(rng_);
      }
      return Timed([&] {
        SpinFor(duration);
        return std::string();
      });
    }
    const std::string command =
        Substitute(Substitute(spec_.command, "{lp_file_path}",
                              LpFile(size).string()),
                   "{size}", std::to_string(size));
    return Timed([&] { return RunShell(command); });
  }

 private:
  template <typename Fn>
  std::pair<double, std::string> Timed(Fn&& fn) {
    const auto start = Clock::now();
    std::string error = fn();
    const auto end = Clock::now();
    if (end < start) {
      throw Error(ErrorCode::kClockError, "monotonic clock went backwards");
    }
    const double seconds = std::chrono::duration<double>(end - start).count();
    if (error.empty() && !(seconds > 0.0)) {
      error = "probe finished below clock resolution";
    }
    return {seconds, error};
  }

  std::filesystem::path LpFile(std::int64_t size) {
    auto it = lp_files_.find(size);
    if (it != lp_files_.end()) return it->second;
    const std::filesystem::path path =
        work_dir_ / ("blockagg-" + std::to_string(::getpid()) + "-size" +
                     std::to_string(size) + ".lp");
    std::ofstream out(path);
    out << GenerateLp(size, spec_.lp, spec_.seed);
    if (!out) {
      throw Error(ErrorCode::kIo, "cannot write LP file " + path.string());
    }
    written_.push_back(path);
    lp_files_.emplace(size, path);
    return path;
  }

  const ProbeSpec& spec_;
  std::filesystem::path work_dir_;
  std::mt19937_64 rng_;
  std::map<std::int64_t, std::filesystem::path> lp_files_;
  std::vector<std::filesystem::path> written_;
};

void ValidateGrid(std::span<const std::int64_t> grid) {
  if (grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "calibration grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid sizes must be >= 1, got " + std::to_string(grid[i]));
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid must be strictly ascending");
    }
  }
}

}  // namespace

CalibrationRecord RunCalibration(const ProbeSpec& spec,
                                 std::span<const std::int64_t> grid,
                                 const CalibrationOptions& options) {
  ValidateGrid(grid);
  if (options.repeats < 1 || options.warmups < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "repeats must be >= 1 and warmups >= 0");
  }
  if (spec.mode == ProbeMode::kExternalCommand && spec.command.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "external probe has no command");
  }
  const SyntheticProbe& syn = spec.synthetic;
  if (spec.mode == ProbeMode::kSynthetic &&
      (syn.fixed < 0 || syn.linear < 0 || syn.quadratic < 0 || syn.noise < 0 ||
       syn.noise >= 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "synthetic terms must be >= 0 and noise in [0, 1)");
  }

  CalibrationRecord record;
  record.probe = spec;
  record.grid.assign(grid.begin(), grid.end());
  record.repeats = options.repeats;
  record.warmups = options.warmups;
  record.statistic = options.statistic;
  record.timestamp = UtcTimestamp();
  record.platform_note = options.platform_note;

  const std::filesystem::path work_dir =
      options.work_dir.empty() ? std::filesystem::temp_directory_path()
                               : std::filesystem::path(options.work_dir);
  Prober prober(spec, work_dir);

  if (spec.mode == ProbeMode::kExternalCommand) {
    auto [seconds, error] = prober.Probe(grid.front());
    if (!error.empty()) {
      record.failure = ProbeFailure{grid.front(), "smoke probe: " + error};
      return record;
    }
  }

  for (std::int64_t size : grid) {
    SizeSamples entry{size, {}};
    std::string error;
    for (std::int64_t w = 0; w < options.warmups && error.empty(); ++w) {
      error = prober.Probe(size).second;
    }
    for (std::int64_t r = 0; r < options.repeats && error.empty(); ++r) {
      auto [seconds, message] = prober.Probe(size);
      error = message;
      if (error.empty()) entry.seconds.push_back(seconds);
    }
    if (!error.empty()) {
      record.failure = ProbeFailure{size, error};
      break;
    }
    record.samples.push_back(std::move(entry));
  }
  return record;
}

double ReduceSamples(std::span<const double> seconds, Statistic statistic) {
  if (seconds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no samples to reduce");
  }
  switch (statistic) {
    case Statistic::kMean:
      return std::accumulate(seconds.begin(), seconds.end(), 0.0) /
             static_cast<double>(seconds.size());
    case Statistic::kMax:
      return *std::max_element(seconds.begin(), seconds.end());
    case Statistic::kMedian: {
      std::vector<double> sorted(seconds.begin(), seconds.end());
      std::sort(sorted.begin(), sorted.end());
      const std::size_t mid = sorted.size() / 2;
      return sorted.size() % 2 == 1 ? sorted[mid]
                                    : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }
  }
  return 0.0;
}

CostModel FitModel(const CalibrationRecord& record, const FitOptions& options) {
  if (options.block_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "block size must be >= 1");
  }
  if (record.samples.empty()) {
    throw Error(ErrorCode::kGridGap, "calibration record has no samples");
  }
  std::map<std::int64_t, double> by_index;
  for (const SizeSamples& entry : record.samples) {
    if (entry.size % options.block_size != 0) {
      throw Error(ErrorCode::kGridMismatch,
                  "probed size " + std::to_string(entry.size) +
                      " is not a multiple of block size " +
                      std::to_string(options.block_size));
    }
    by_index[entry.size / options.block_size] =
        ReduceSamples(entry.seconds, options.statistic);
  }
  if (by_index.begin()->first != 1) {
    throw Error(ErrorCode::kGridGap,
                "grid must start at one block; first probed index is " +
                    std::to_string(by_index.begin()->first));
  }
  const std::int64_t last = by_index.rbegin()->first;
  std::vector<double> costs;
  std::vector<std::int64_t> filled;
  for (std::int64_t i = 1; i <= last; ++i) {
    auto it = by_index.find(i);
    if (it != by_index.end()) {
      costs.push_back(it->second);
      continue;
    }
    if (!options.interpolate_gaps) {
      throw Error(ErrorCode::kGridGap,
                  "no samples for " + std::to_string(i) +
                      " blocks (enable interpolation to fill gaps)");
    }
    const auto hi = by_index.upper_bound(i);
    const auto lo = std::prev(hi);
    const double t = static_cast<double>(i - lo->first) /
                     static_cast<double>(hi->first - lo->first);
    costs.push_back(lo->second + t * (hi->second - lo->second));
    filled.push_back(i);
  }
  const std::string unit = "s";
  return CostModel(options.block_size, std::move(costs), options.eps, unit,
                   options.statistic, std::move(filled));
}

}  // namespace blockagg
