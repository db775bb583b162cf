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

#ifndef BLOCKAGG_CLI_H_
#define BLOCKAGG_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "blockagg/calibration.h"

namespace blockagg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Raised for malformed flags; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "4x1" is four blocks of size 1; terms may be joined: "2x3,1x5".
std::vector<std::int64_t> ParseBlockSpec(std::string_view spec);
// "2,2,5".
std::vector<std::int64_t> ParseSizeList(std::string_view list);
// "1..12" (inclusive) or "1,2,4". Every size must be >= 1.
std::vector<std::int64_t> ParseGrid(std::string_view grid);
// "fixed=9,lin=0,quad=1,noise=0.1"; times in milliseconds, noise relative.
SyntheticProbe ParseSyntheticSpec(std::string_view spec);

// Entry point behind the blockagg binary. Returns the process exit code:
// 0 success, 1 solver/domain error, 2 usage error.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace blockagg::cli

#endif  // BLOCKAGG_CLI_H_
