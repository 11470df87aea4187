// Copyright 2026 The ipszeta Authors
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

namespace ipszeta {

enum class ErrorKind {
    ConstraintViolation,
    DomainError,
    DimensionMismatch,
    SizeExceeded,
    ConvergenceFailure,
    SingularAtU,
    KindMismatch,
    InvariantDrift,
    ParseError,
};

constexpr std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConstraintViolation:
            return "ConstraintViolation";
        case ErrorKind::DomainError:
            return "DomainError";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::SizeExceeded:
            return "SizeExceeded";
        case ErrorKind::ConvergenceFailure:
            return "ConvergenceFailure";
        case ErrorKind::SingularAtU:
            return "SingularAtU";
        case ErrorKind::KindMismatch:
            return "KindMismatch";
        case ErrorKind::InvariantDrift:
            return "InvariantDrift";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Error";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for errors caused by bad input rather than by the computation.
    bool is_input_error() const noexcept {
        return kind_ == ErrorKind::ConstraintViolation || kind_ == ErrorKind::DomainError ||
               kind_ == ErrorKind::DimensionMismatch || kind_ == ErrorKind::ParseError ||
               kind_ == ErrorKind::KindMismatch || kind_ == ErrorKind::SizeExceeded;
    }

   private:
    ErrorKind kind_;
};

}  // namespace ipszeta
