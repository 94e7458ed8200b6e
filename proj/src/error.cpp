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

#include "qshell/error.hpp"

namespace qshell {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::OffShell:
            return "OffShell";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::ZeroVector:
            return "ZeroVector";
        case ErrorCode::NotSquare:
            return "NotSquare";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NonRealValue:
            return "NonRealValue";
        case ErrorCode::NotVanishingAtRest:
            return "NotVanishingAtRest";
        case ErrorCode::NoConvergence:
            return "NoConvergence";
        case ErrorCode::StepCount:
            return "StepCount";
        case ErrorCode::DegenerateProjectionUnderflow:
            return "DegenerateProjectionUnderflow";
        case ErrorCode::InsufficientTrials:
            return "InsufficientTrials";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::ValidationError:
            return "ValidationError";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message, double detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), detail_(detail) {
}

void fail(ErrorCode code, const std::string &message, double detail) {
    throw Error(code, message, detail);
}

}  // namespace qshell
