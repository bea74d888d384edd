// Copyright 2026 The fliess-kit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace fliess {

/// Base class of every error raised by the library. `kind()` is the stable
/// name printed by the command-line tool.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define FLIESS_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        using Error::Error;                                         \
        const char* kind() const noexcept override { return #Name; } \
    }

FLIESS_DEFINE_ERROR(QueryBeyondTruncation);
FLIESS_DEFINE_ERROR(TruncationMismatch);
FLIESS_DEFINE_ERROR(ComponentMismatch);
FLIESS_DEFINE_ERROR(AlphabetMismatch);
FLIESS_DEFINE_ERROR(ProperSeriesError);
FLIESS_DEFINE_ERROR(NonConvergence);
FLIESS_DEFINE_ERROR(UnsupportedArity);
FLIESS_DEFINE_ERROR(DuplicateWordError);
FLIESS_DEFINE_ERROR(GridTooCoarse);
FLIESS_DEFINE_ERROR(LoopDiverged);
FLIESS_DEFINE_ERROR(TriangularityViolation);
FLIESS_DEFINE_ERROR(OrderCapExceeded);
FLIESS_DEFINE_ERROR(PreconditionUnsatisfiable);
FLIESS_DEFINE_ERROR(OracleMismatch);
FLIESS_DEFINE_ERROR(InvalidArgument);

#undef FLIESS_DEFINE_ERROR

/// Parse failure; carries the 1-based line number of the offending input
/// line (0 when the input is not line oriented).
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    const char* kind() const noexcept override { return "SyntaxError"; }
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace fliess
