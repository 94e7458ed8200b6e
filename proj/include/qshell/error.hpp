// Copyright 2026 The qshell Authors
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

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qshell {

enum class ErrorCode {
    OffShell,
    DimensionMismatch,
    ZeroVector,
    NotSquare,
    NotHermitian,
    NonRealValue,
    NotVanishingAtRest,
    NoConvergence,
    StepCount,
    DegenerateProjectionUnderflow,
    InsufficientTrials,
    ParseError,
    ValidationError,
    InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Base exception for every failure raised by the library. The code
/// identifies the failure class; `detail()` carries the numeric residual
/// or best value where one exists (NaN otherwise).
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message, double detail = std::numeric_limits<double>::quiet_NaN());

    ErrorCode code() const noexcept {
        return code_;
    }
    double detail() const noexcept {
        return detail_;
    }

  private:
    ErrorCode code_;
    double detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message, double detail = std::numeric_limits<double>::quiet_NaN());

inline void require_same_dimension(std::size_t a, std::size_t b, std::string_view what) {
    if (a != b) {
        fail(ErrorCode::DimensionMismatch,
             std::string(what) + ": dimension " + std::to_string(a) + " does not match " + std::to_string(b));
    }
}

}  // namespace qshell
