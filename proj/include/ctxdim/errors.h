// Copyright 2026 The ctxdim Authors
//
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

#ifndef CTXDIM_ERRORS_H
#define CTXDIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace ctxdim {

enum class ErrorCode {
    NotHermitian,
    NotDichotomic,
    NotState,
    DimensionMismatch,
    UnsupportedKind,
    UnknownScenario,
    BadParameter,
    MissingLabel,
    TooManyLabels,
    NotCommuting,
    WrongDimension,
    UnsupportedScenario,
    LengthMismatch,
    Infeasible,
    NotCanonical,
    UnsupportedLength,
    UnsupportedCombination,
    BadInput,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
    }
    ErrorCode code() const {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace ctxdim

#endif
