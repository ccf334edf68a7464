// Copyright 2026 The gnndp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GNNDP_COMMON_ERROR_H_
#define GNNDP_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace gnndp {

// Mirrors gnndp_status in the public C header; values must stay in sync.
enum class ErrorCode {
  kOk = 0,
  kInvalidArgument = 1,
  kParse = 2,
  kIo = 3,
  kShape = 4,
  kUndefinedMetric = 5,
  kCalibration = 6,
  kAuditSetup = 7,
  kInternal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorCode::kInvalidArgument, message);
}

}  // namespace gnndp

#endif  // GNNDP_COMMON_ERROR_H_
