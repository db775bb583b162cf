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

#include "blockagg/errors.h"

namespace blockagg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kClassificationUndefined: return "classification-undefined";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::kGridMismatch: return "grid-mismatch";
    case ErrorCode::kGridGap: return "grid-gap";
    case ErrorCode::kWrongPath: return "wrong-path";
    case ErrorCode::kInstanceTooLarge: return "instance-too-large";
    case ErrorCode::kInvalidGadget: return "invalid-gadget";
    case ErrorCode::kProbeFailure: return "probe-failure";
    case ErrorCode::kClockError: return "clock-error";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace blockagg
