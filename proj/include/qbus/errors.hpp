// Copyright 2026 The qbus Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbus {

enum class ErrorCode {
  kDimensionMismatch,
  kNotHermitian,
  kNoConvergence,
  kPhotonOverflow,
  kInvalidArgument,
  kTraceDrift,
  kNegativeEigenvalue,
  kUnknownPreset,
  kConfig,
  kIo,
};

/// Stable, machine-parsable name used in `ERROR <code>:` diagnostics.
constexpr std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kNotHermitian: return "not-hermitian";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kPhotonOverflow: return "photon-overflow";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kTraceDrift: return "trace-drift";
    case ErrorCode::kNegativeEigenvalue: return "negative-eigenvalue";
    case ErrorCode::kUnknownPreset: return "unknown-preset";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

/// Numerical failures map to exit status 2, everything else to 1.
constexpr bool is_numerical(ErrorCode code) {
  return code == ErrorCode::kNotHermitian || code == ErrorCode::kNoConvergence ||
         code == ErrorCode::kTraceDrift || code == ErrorCode::kNegativeEigenvalue;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qbus
