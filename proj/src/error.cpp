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

#include "spatcon/error.hpp"

namespace spatcon
{
    std::string_view to_string(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidInterval: return "InvalidInterval";
        case ErrorCode::PlanExceedsTrack: return "PlanExceedsTrack";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::NoActivePath: return "NoActivePath";
        case ErrorCode::MalformedTrace: return "MalformedTrace";
        case ErrorCode::ZeroMatrix: return "ZeroMatrix";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::RaggedCurves: return "RaggedCurves";
        case ErrorCode::CurveTooShort: return "CurveTooShort";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
        case ErrorCode::TruncatedPayload: return "TruncatedPayload";
        case ErrorCode::HeaderInconsistent: return "HeaderInconsistent";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownKey: return "UnknownKey";
        case ErrorCode::IoError: return "IoError";
        }
        return "Unknown";
    }

    int exit_code(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::InvalidConfig:
        case ErrorCode::InvalidInterval:
        case ErrorCode::PlanExceedsTrack:
        case ErrorCode::ParseError:
        case ErrorCode::UnknownKey:
            return 3; // configuration
        case ErrorCode::IoError:
            return 4;
        case ErrorCode::BadMagic:
        case ErrorCode::UnsupportedVersion:
        case ErrorCode::TruncatedPayload:
        case ErrorCode::HeaderInconsistent:
        case ErrorCode::MalformedTrace:
            return 5; // file format
        default:
            return 6; // numerical / model
        }
    }

    Error::Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    void raise(ErrorCode code, const std::string &message)
    {
        throw Error(code, message);
    }
}
