// SPDX-License-Identifier: Apache-2.0
//
// spatcon - spatial consistency evaluation for massive SIMO channels
// Copyright (C) 2026 The spatcon authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spatcon
{
    enum class ErrorCode
    {
        InvalidConfig,
        InvalidInterval,
        PlanExceedsTrack,
        CoincidentPoints,
        NoActivePath,
        MalformedTrace,
        ZeroMatrix,
        DimensionMismatch,
        NotHermitian,
        RaggedCurves,
        CurveTooShort,
        BadMagic,
        UnsupportedVersion,
        TruncatedPayload,
        HeaderInconsistent,
        ParseError,
        UnknownKey,
        IoError,
    };

    std::string_view to_string(ErrorCode code);

    // Exit status used by the command line tool for each error category.
    int exit_code(ErrorCode code);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message);

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    [[noreturn]] void raise(ErrorCode code, const std::string &message);
}
